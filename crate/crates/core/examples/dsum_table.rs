//! Signed sums over every affine derangement of Z/2kZ, k = 3..9.
//!
//! ```bash
//! cargo run -p wangsun --example dsum_table
//! ```

use wangsun::wangsun::{dsum, SumOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = SumOptions::default().with_jobs(0);
    println!("{:>4} {:>6} {:>10}  value", "2k", "terms", "ms");
    for k in 3..=9 {
        let r = dsum(k, &opts)?;
        println!(
            "{:>4} {:>6} {:>10}  {}",
            2 * k,
            r.summand_count,
            r.elapsed.as_millis(),
            r.value
        );
    }
    Ok(())
}
