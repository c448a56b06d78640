//! Floating-point shadow of the exact sums, for sanity checks only.
//!
//! Nothing here touches the exact path: ratios are evaluated directly from
//! `exp(2 pi i a m / n)`.

use num_complex::Complex64;

use super::quasipolarity::differences;
use super::SumKind;
use crate::affine;
use crate::cyclotomic::Rational;
use crate::permutation::{sign_of_images, Derangements};

fn ratio(n: u64, a: u64, m: u64) -> Complex64 {
    let z = Complex64::from_polar(1.0, std::f64::consts::TAU * ((a * m) % n) as f64 / n as f64);
    let one = Complex64::new(1.0, 0.0);
    (one + z) / (one - z)
}

/// Numeric value of `qsum`, `dsum` or the classical sum (parameter `k`, `k`
/// or `n` respectively) with `zeta = exp(2 pi i a / n)`.
pub fn shadow_sum(kind: SumKind, param: u64, a: u64) -> Complex64 {
    match kind {
        SumKind::Qsum | SumKind::Dsum => {
            let n = 2 * param;
            let maps: Vec<_> = if kind == SumKind::Qsum {
                affine::enumerate_quasipolarities_bruteforce(param)
                    .unwrap()
                    .collect()
            } else {
                affine::enumerate_affine_derangements(n).unwrap().collect()
            };
            maps.iter()
                .map(|f| {
                    let sign = if kind == SumKind::Dsum {
                        f.sign() as f64
                    } else {
                        1.0
                    };
                    let prod: Complex64 =
                        differences(f).into_iter().map(|m| ratio(n, a, m)).product();
                    prod * sign
                })
                .sum()
        }
        SumKind::Classical => {
            let n = param;
            let m = (n - 1) as usize;
            let mut total = Complex64::new(0.0, 0.0);
            let mut stream = Derangements::new(m);
            while let Some(images) = stream.advance() {
                let prod: Complex64 = images
                    .iter()
                    .enumerate()
                    .map(|(j, &p)| ratio(n, a, (j as u64 + n - p as u64) % n))
                    .product();
                total += prod * sign_of_images(images) as f64;
            }
            total
        }
    }
}

/// `|approx - exact| <= rel_tol * max(|exact|, 1)`.
pub fn agrees(exact: &Rational, approx: Complex64, rel_tol: f64) -> bool {
    let e = exact.to_f64();
    let diff = (approx - Complex64::new(e, 0.0)).norm();
    diff <= rel_tol * e.abs().max(1.0)
}
