//! The symmetric-group sum over all derangements of S_(n-1), checked
//! against its closed form `(-1)^((n-1)/2) ((n-2)!!)^2 / n`.
//!
//! ```bash
//! cargo run --release -p wangsun --example classical_identity -- 11
//! ```

use wangsun::wangsun::{classical_closed_form, classical_sum, SumOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n_max: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(9);
    let opts = SumOptions::default().with_jobs(0);
    for n in (3..=n_max).step_by(2) {
        let r = classical_sum(n, &opts)?;
        let closed = classical_closed_form(n)?;
        println!(
            "n = {n:>2}: {:>9} derangements, sum = {}, closed form = {}, {} ({} ms)",
            r.summand_count,
            r.value,
            closed,
            if r.value == closed { "ok" } else { "MISMATCH" },
            r.elapsed.as_millis()
        );
    }
    Ok(())
}
