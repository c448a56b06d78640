//! Look the nonzero qsum terms up in the OEIS. Runs against the bundled
//! fixtures unless `--online` is given.
//!
//! ```bash
//! cargo run -p wangsun --example oeis_lookup
//! cargo run -p wangsun --example oeis_lookup -- --online
//! ```

use wangsun::cli::oeis::{Fixtures, OeisClient, DEFAULT_BASE_URL};
use wangsun::cli::oeis_terms;
use wangsun::wangsun::{qsum, SumOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let online = std::env::args().any(|a| a == "--online");
    let opts = SumOptions::default();
    let results = (3..=10)
        .map(|k| qsum(k, &opts))
        .collect::<Result<Vec<_>, _>>()?;
    let terms = oeis_terms(&results);
    println!("query: {terms:?}");

    let client = if online {
        OeisClient::online(DEFAULT_BASE_URL)
    } else {
        OeisClient::offline(Fixtures::bundled())
    };
    for m in client.search(&terms)? {
        println!(
            "{}  prefix {}  {}",
            m.sequence_id, m.matched_prefix_length, m.name
        );
    }
    Ok(())
}
