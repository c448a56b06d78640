//! Single-threaded and parallel runs of the same sums give identical exact
//! values; the two summation engines agree as well.
//!
//! ```bash
//! cargo run --release -p wangsun --example parallel_sums
//! ```

use wangsun::wangsun::{classical_sum, dsum, Engine, SumOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let serial = SumOptions::default().with_jobs(1);
    let parallel = SumOptions::default().with_jobs(0);
    for k in [6, 9, 12] {
        let a = dsum(k, &serial)?;
        let b = dsum(k, &parallel)?;
        let c = dsum(k, &serial.with_engine(Engine::Exact))?;
        println!(
            "dsum k={k:>2}: serial {} ms, parallel {} ms, equal: {}, exact engine equal: {}",
            a.elapsed.as_millis(),
            b.elapsed.as_millis(),
            a.value == b.value,
            a.value == c.value
        );
    }
    let a = classical_sum(9, &serial)?;
    let b = classical_sum(9, &parallel)?;
    println!(
        "classical n=9: serial {} ms, parallel {} ms, value {} (equal: {})",
        a.elapsed.as_millis(),
        b.elapsed.as_millis(),
        a.value,
        a.value == b.value
    );
    Ok(())
}
