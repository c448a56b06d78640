use std::sync::Arc;
use std::time::Instant;

use super::engine::{run, Context};
use super::{Result, SumKind, SumOptions, SumResult, WangSunError};
use crate::affine::{self, AffineMap};
use crate::arith;
use crate::cyclotomic::{CycloError, CycloField, CycloNumber};

/// Range of `k` for which the signed affine-derangement sum has been
/// tabulated in the literature.
pub(crate) const DSUM_TABULATED: std::ops::RangeInclusive<u64> = 3..=9;

pub(crate) fn differences(f: &AffineMap) -> Vec<u64> {
    let n = f.modulus();
    (0..n).map(|j| (j + n - f.image(j)) % n).collect()
}

/// `prod_{j=0}^{2k-1} (1 + zeta^(j - f(j))) / (1 - zeta^(j - f(j)))` for an
/// affine derangement `f`, computed with exact field arithmetic.
pub fn affine_summand(field: &Arc<CycloField>, f: &AffineMap) -> Result<CycloNumber> {
    if field.conductor() != f.modulus() {
        return Err(CycloError::FieldMismatch(field.conductor(), f.modulus()).into());
    }
    if !f.is_derangement() {
        return Err(WangSunError::NotADerangement(*f));
    }
    let mut prod = field.one();
    for m in differences(f) {
        prod = &prod * &field.ratio(m as i64)?;
    }
    Ok(prod)
}

/// The unsigned summand attached to a quasipolarity (or any affine
/// derangement). Same as [`affine_summand`].
pub fn quasipolarity_summand(field: &Arc<CycloField>, f: &AffineMap) -> Result<CycloNumber> {
    affine_summand(field, f)
}

fn check_k(k: u64) -> Result<()> {
    if k == 0 {
        Err(WangSunError::BadK)
    } else {
        Ok(())
    }
}

fn affine_sum(
    kind: SumKind,
    k: u64,
    maps: Vec<AffineMap>,
    signed: bool,
    opts: &SumOptions,
) -> Result<SumResult> {
    let start = Instant::now();
    let n = 2 * k;
    let field = CycloField::new(n, opts.root_exponent)?;
    let ctx = Context::new(&field, opts.engine, n as u32);
    let (total, count) = run(&ctx, &maps, opts.jobs, |f, acc| {
        let sign = if signed { f.sign() } else { 1 };
        acc.push(&ctx, sign, &differences(f));
    })?;
    let value = total
        .as_rational()
        .ok_or_else(|| WangSunError::NotRational {
            kind,
            param: k,
            value: total.to_string(),
        })?;
    Ok(SumResult {
        kind,
        param: k,
        value,
        root_exponent: field.root_exponent(),
        summand_count: count,
        elapsed: start.elapsed(),
        beyond_paper: kind == SumKind::Dsum && !DSUM_TABULATED.contains(&k),
    })
}

/// Unsigned sum over the quasipolarities of `Z/2kZ`.
pub fn qsum(k: u64, opts: &SumOptions) -> Result<SumResult> {
    check_k(k)?;
    let maps: Vec<AffineMap> = affine::enumerate_quasipolarities_bruteforce(k)?.collect();
    affine_sum(SumKind::Qsum, k, maps, false, opts)
}

/// Signed sum over every affine derangement of `Z/2kZ`.
pub fn dsum(k: u64, opts: &SumOptions) -> Result<SumResult> {
    check_k(k)?;
    let maps: Vec<AffineMap> = affine::enumerate_affine_derangements(2 * k)?.collect();
    affine_sum(SumKind::Dsum, k, maps, true, opts)
}

/// Sum over the quasipolarities with each summand weighted by its sign.
pub fn signed_quasipolarity_sum(k: u64, opts: &SumOptions) -> Result<SumResult> {
    check_k(k)?;
    let maps: Vec<AffineMap> = affine::enumerate_quasipolarities_bruteforce(k)?.collect();
    affine_sum(SumKind::Qsum, k, maps, true, opts)
}

/// Number of quasipolarities that never move any point by exactly `k`.
pub fn qsum_combinatorial(k: u64) -> Result<u64> {
    check_k(k)?;
    Ok(affine::enumerate_quasipolarities_bruteforce(k)?
        .filter(|f| !f.hits_tritone())
        .count() as u64)
}

/// `[2 | k] (s1*(2k) - s1*(k))`.
pub fn qsum_closed_form(k: u64) -> u64 {
    if k.is_multiple_of(2) {
        arith::unitary_sigma(2 * k) - arith::unitary_sigma(k)
    } else {
        0
    }
}

/// The sign shared by all quasipolarities of `Z/2kZ` as permutations.
pub fn common_sign(k: u64) -> Result<i8> {
    check_k(k)?;
    let mut signs = affine::enumerate_quasipolarities_bruteforce(k)?.map(|f| f.sign());
    let first = signs.next().expect("e^k.1 is always a quasipolarity");
    if signs.all(|s| s == first) {
        Ok(first)
    } else {
        Err(WangSunError::SignNotConstant { n: 2 * k })
    }
}
