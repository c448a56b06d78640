//! Journal computed sums to a JSON Lines cache and read them back. A value
//! that disagrees with the journal is refused.
//!
//! ```bash
//! cargo run -p wangsun --example results_cache -- /tmp/wangsun-cache.jsonl
//! ```

use wangsun::cli::cache::{CacheRecord, ResultsCache};
use wangsun::cyclotomic::Rational;
use wangsun::wangsun::{dsum, qsum, SumKind, SumOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .map(std::path::PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("wangsun-example-cache.jsonl"));
    let cache = ResultsCache::new(&path);
    let opts = SumOptions::default();

    for r in [qsum(6, &opts)?, dsum(4, &opts)?] {
        let outcome = cache.put(&CacheRecord::from_result(&r))?;
        println!("{} k={}: {} -> {outcome:?}", r.kind, r.param, r.value);
    }
    let hit = cache.get(SumKind::Dsum, 4, 1)?.expect("just stored");
    println!(
        "lookup dsum k=4: {} (written by {})",
        hit.value, hit.version
    );

    let mut bogus = hit.clone();
    bogus.value = Rational::from(1);
    match cache.put(&bogus) {
        Err(e) => println!("refused: {e}"),
        Ok(o) => println!("unexpected: {o:?}"),
    }
    println!("{} records in {}", cache.load()?.len(), path.display());
    Ok(())
}
