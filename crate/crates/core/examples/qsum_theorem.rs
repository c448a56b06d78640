//! The unsigned quasipolarity sum against its closed form, the even unitary
//! divisor sum and the tritone count, plus the constant sign of the signed sum.
//!
//! ```bash
//! cargo run -p wangsun --example qsum_theorem -- 30
//! ```

use wangsun::arith;
use wangsun::wangsun::{common_sign, qsum, qsum_closed_form, qsum_combinatorial, SumOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k_max: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(24);
    let opts = SumOptions::default();
    println!(
        "{:>3} {:>6} {:>6} {:>6} {:>6} {:>5}",
        "k", "qsum", "closed", "even", "count", "sign"
    );
    for k in 1..=k_max {
        let q = qsum(k, &opts)?.value;
        println!(
            "{k:>3} {:>6} {:>6} {:>6} {:>6} {:>+5}",
            q.to_string(),
            qsum_closed_form(k),
            arith::even_unitary_divisor_sum(k),
            qsum_combinatorial(k)?,
            common_sign(k)?
        );
    }
    Ok(())
}
