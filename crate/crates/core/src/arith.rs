//! Elementary modular and multiplicative number theory.
//!
//! Everything here works on machine integers; inputs stay small (the groups
//! we enumerate have order `2k * phi(2k)`), so factorization is plain trial
//! division.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

/// Greatest common divisor, always non-negative. `gcd(0, 0) == 0`.
pub fn gcd(a: i64, b: i64) -> u64 {
    a.unsigned_abs().gcd(&b.unsigned_abs())
}

/// Ascending list of the residues in `[0, n)` coprime to `n`.
///
/// Returns `None` for `n == 0`.
pub fn units(n: u64) -> Option<Vec<u64>> {
    if n == 0 {
        return None;
    }
    if n == 1 {
        // Z/1Z is the zero ring; its single element 0 is a unit.
        return Some(vec![0]);
    }
    Some((1..n).filter(|v| v.gcd(&n) == 1).collect())
}

/// Euler's totient, by the product formula over the prime factorization.
pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Prime factorization as ascending `(p, exponent)` pairs. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `d` is a unitary divisor of `n`: `d | n` and `gcd(d, n/d) = 1`.
pub fn is_unitary_divisor(d: u64, n: u64) -> bool {
    d != 0 && n.is_multiple_of(d) && d.gcd(&(n / d)) == 1
}

/// Unitary divisors of `n` in ascending order.
///
/// Built from the prime-power split of `n`, so the length is always
/// `2^omega(n)`.
pub fn unitary_divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let pe = p.pow(e);
        let extra: Vec<u64> = out.iter().map(|d| d * pe).collect();
        out.extend(extra);
    }
    out.sort_unstable();
    out
}

/// Sum of unitary divisors, `s1*(n)`, via the multiplicative formula
/// `prod (1 + p^a)` over the exact prime powers of `n`.
pub fn unitary_sigma(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(p, e)| 1 + p.pow(e))
        .product()
}

/// `s1*(n)` by enumerating the divisors and filtering the unitary ones.
pub fn unitary_sigma_by_enumeration(n: u64) -> u64 {
    divisors(n)
        .into_iter()
        .filter(|&d| is_unitary_divisor(d, n))
        .sum()
}

/// Sum of the even unitary divisors of `k`. Zero when `k` is odd.
pub fn even_unitary_divisor_sum(k: u64) -> u64 {
    unitary_divisors(k).into_iter().filter(|d| d % 2 == 0).sum()
}

/// `m!! = m (m-2) (m-4) ...`, with `0!! = 1`.
pub fn double_factorial(m: u64) -> BigUint {
    let mut acc = BigUint::one();
    let mut i = m;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    acc
}

/// `(-1)!!`, which is 1 by convention. Kept separate so `double_factorial`
/// can take an unsigned argument.
pub fn double_factorial_signed(m: i64) -> BigUint {
    if m < 0 {
        BigUint::one()
    } else {
        double_factorial(m as u64)
    }
}
