//! Dense univariate polynomials, lowest degree first, used to build `Phi_n`
//! and to invert elements of `Q[x] / Phi_n`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith;

fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Exact quotient of `num` by a monic integer polynomial. `None` if the
/// remainder is non-zero or an intermediate overflows.
fn exact_div_monic(num: &[i64], den: &[i64]) -> Option<Vec<i64>> {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    if num.len() < den.len() {
        return num.iter().all(|&c| c == 0).then(Vec::new);
    }
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] = rem[i + j].checked_sub(c.checked_mul(d)?)?;
            }
        }
    }
    rem.iter().all(|&c| c == 0).then_some(quot)
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree
/// first, obtained by dividing `x^n - 1` by `Phi_d` for each proper divisor
/// `d` of `n`. Panics on `n = 0`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n > 0, "cyclotomic polynomial of order 0");
    let mut memo = BTreeMap::new();
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: u64, memo: &mut BTreeMap<u64, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut acc = vec![0i64; n as usize + 1];
    acc[0] = -1;
    acc[n as usize] = 1;
    for d in arith::divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_memo(d, memo);
        acc = exact_div_monic(&acc, &phi_d)
            .unwrap_or_else(|| panic!("Phi_{d} does not divide the running quotient for n = {n}"));
    }
    memo.insert(n, acc.clone());
    acc
}

/// Product of integer polynomials, with overflow checks.
pub fn mul_int(a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    if a.is_empty() || b.is_empty() {
        return Some(Vec::new());
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = out[i + j].checked_add(x.checked_mul(y)?)?;
        }
    }
    Some(out)
}

pub type QPoly = Vec<BigRational>;

pub fn q_from_int(p: &[i64]) -> QPoly {
    p.iter()
        .map(|&c| BigRational::from_integer(c.into()))
        .collect()
}

pub fn q_mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

pub fn q_sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let len = a.len().max(b.len());
    let mut out: QPoly = (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// Polynomial division over `Q`. Panics on a zero divisor.
pub fn q_div_rem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] * &lead_inv;
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                rem[i + j] -= &c * y;
            }
        }
        quot[i] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

/// Remainder modulo a monic integer polynomial, in place. Leaves exactly
/// `deg(modulus)` coefficients.
pub fn q_reduce_monic(p: &mut QPoly, modulus: &[i64]) {
    let d = modulus.len() - 1;
    if p.len() > d {
        for t in (d..p.len()).rev() {
            let c = std::mem::take(&mut p[t]);
            if c.is_zero() {
                continue;
            }
            for (s, &m) in modulus[..d].iter().enumerate() {
                if m != 0 {
                    p[t - d + s] -= &c * BigRational::from_integer(m.into());
                }
            }
        }
    }
    p.resize(d, BigRational::zero());
}

/// `s` with `s * a ≡ 1 (mod m)`, by the extended Euclidean algorithm over
/// `Q`. `None` when `gcd(a, m)` is not a unit (including `a = 0`).
pub fn q_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<QPoly> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    if r1.is_empty() {
        return None;
    }
    // invariant: s_i * a ≡ r_i (mod m)
    let mut s0: QPoly = Vec::new();
    let mut s1: QPoly = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = q_div_rem(&r0, &r1);
        let s = q_sub(&s0, &q_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    let mut s: QPoly = s0.into_iter().map(|x| x * &c).collect();
    let (_, rem) = q_div_rem(&s, m);
    s = rem;
    Some(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn phi_105_has_a_coefficient_minus_two() {
        let p = cyclotomic_polynomial(105);
        assert_eq!(p.len() as u64 - 1, arith::totient(105));
        assert!(p.contains(&-2));
    }

    #[test]
    fn divisor_product_rebuilds_x_n_minus_one() {
        for n in 1..=100u64 {
            let phi = cyclotomic_polynomial(n);
            assert_eq!(phi.len() as u64 - 1, arith::totient(n), "n={n}");
            assert_eq!(*phi.last().unwrap(), 1);
            let prod = arith::divisors(n).into_iter().fold(vec![1i64], |acc, d| {
                mul_int(&acc, &cyclotomic_polynomial(d)).unwrap()
            });
            let mut want = vec![0i64; n as usize + 1];
            want[0] = -1;
            want[n as usize] = 1;
            assert_eq!(prod, want, "n={n}");
        }
    }

    #[test]
    fn inverse_of_one_minus_i() {
        // (1 - x)^{-1} mod x^2 + 1 = (1 + x) / 2
        let m = q_from_int(&[1, 0, 1]);
        let a = q_from_int(&[1, -1]);
        let inv = q_inverse_mod(&a, &m).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(inv, vec![half.clone(), half]);
        assert!(q_inverse_mod(&[], &m).is_none());
        // x^2 - 1 shares the factor x - 1 with x^2 - 1
        assert!(q_inverse_mod(&q_from_int(&[-1, 1]), &q_from_int(&[-1, 0, 1])).is_none());
    }
}
