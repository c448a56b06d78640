use std::time::Instant;

use num_bigint::BigInt;

use super::engine::{run, Context};
use super::{Result, SumKind, SumOptions, SumResult, WangSunError};
use crate::arith;
use crate::cyclotomic::{CycloField, Rational};
use crate::permutation::{sign_of_images, Derangements};

fn check_order(n: u64) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) {
        Err(WangSunError::BadClassicalOrder(n))
    } else {
        Ok(())
    }
}

/// `(-1)^((n-1)/2) ((n-2)!!)^2 / n` for odd `n >= 3`.
pub fn classical_closed_form(n: u64) -> Result<Rational> {
    check_order(n)?;
    let df = BigInt::from(arith::double_factorial(n - 2));
    let magnitude = Rational::new(&df * &df, BigInt::from(n));
    Ok(if ((n - 1) / 2) % 2 == 1 {
        -magnitude
    } else {
        magnitude
    })
}

/// Signed sum over all derangements of `{1, .., n-1}` with `zeta` a
/// primitive `n`-th root of unity.
///
/// Derangements are streamed depth-first; the search tree is cut at a short
/// prefix and the subtrees are distributed across workers.
pub fn classical_sum(n: u64, opts: &SumOptions) -> Result<SumResult> {
    check_order(n)?;
    let start = Instant::now();
    let m = (n - 1) as usize;
    let field = CycloField::new(n, opts.root_exponent)?;
    let ctx = Context::new(&field, opts.engine, m as u32);
    let prefixes = Derangements::prefixes(m, 2.min(m));
    let (total, count) = run(&ctx, &prefixes, opts.jobs, |prefix, acc| {
        let mut stream = Derangements::with_prefix(m, prefix).expect("admissible prefix");
        let mut exps = vec![0u64; m];
        while let Some(images) = stream.advance() {
            for (j, (&p, e)) in images.iter().zip(exps.iter_mut()).enumerate() {
                // Shifting both j and pi(j) by one leaves the difference alone.
                *e = (j as u64 + n - p as u64) % n;
            }
            acc.push(&ctx, sign_of_images(images), &exps);
        }
    })?;
    let value = total
        .as_rational()
        .ok_or_else(|| WangSunError::NotRational {
            kind: SumKind::Classical,
            param: n,
            value: total.to_string(),
        })?;
    Ok(SumResult {
        kind: SumKind::Classical,
        param: n,
        value,
        root_exponent: field.root_exponent(),
        summand_count: count,
        elapsed: start.elapsed(),
        beyond_paper: false,
    })
}
