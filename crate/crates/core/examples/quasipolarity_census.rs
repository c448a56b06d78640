//! Count the quasipolarities of Z/2kZ by brute force and by the divisor
//! characterization, and compare with the unitary divisor sum s1*(k).
//!
//! ```bash
//! cargo run -p wangsun --example quasipolarity_census -- 40
//! ```

use wangsun::{affine, arith};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k_max: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(24);
    println!("{:>4} {:>6} {:>6} {:>6}", "k", "|Q_k|", "char.", "s1*");
    for k in 1..=k_max {
        let brute = affine::enumerate_quasipolarities_bruteforce(k)?.count();
        // fails loudly if the characterization ever disagrees with brute force
        let by_char = affine::quasipolarities_by_characterization(k)?.len();
        let s = arith::unitary_sigma(k);
        let flag = if brute as u64 == s {
            ""
        } else {
            "  <- mismatch"
        };
        println!("{k:>4} {brute:>6} {by_char:>6} {s:>6}{flag}");
    }
    Ok(())
}
