//! Shared summation engine: splits work items across a worker pool, folds
//! exact partial sums, and merges them. Exact addition is associative and
//! commutative, so the result does not depend on the split.

use std::sync::Arc;

use rayon::prelude::*;

use super::{Result, WangSunError};
use crate::cyclotomic::{CycloField, CycloNumber, ScaledRatioTable, ScaledSum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Integer-scaled products in `i128` with big-integer fallback.
    #[default]
    Scaled,
    /// Every product formed with exact rational field arithmetic.
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumOptions {
    pub root_exponent: i64,
    /// Worker threads; `0` means available parallelism, `1` runs inline.
    pub jobs: usize,
    pub engine: Engine,
}

impl Default for SumOptions {
    fn default() -> Self {
        Self {
            root_exponent: 1,
            jobs: 1,
            engine: Engine::Scaled,
        }
    }
}

impl SumOptions {
    pub fn with_root(mut self, a: i64) -> Self {
        self.root_exponent = a;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn with_engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }
}

pub(crate) struct Context {
    field: Arc<CycloField>,
    table: Option<ScaledRatioTable>,
    factors: u32,
}

impl Context {
    pub(crate) fn new(field: &Arc<CycloField>, engine: Engine, factors: u32) -> Self {
        let table = (engine == Engine::Scaled).then(|| ScaledRatioTable::new(field));
        Self {
            field: Arc::clone(field),
            table,
            factors,
        }
    }

    fn empty(&self) -> Partial {
        let kind = match &self.table {
            Some(_) => Acc::Scaled(ScaledSum::new(self.factors, self.field.degree())),
            None => Acc::Exact(self.field.zero()),
        };
        Partial {
            acc: kind,
            count: 0,
        }
    }
}

enum Acc {
    Scaled(ScaledSum),
    Exact(CycloNumber),
}

pub(crate) struct Partial {
    acc: Acc,
    count: u64,
}

impl Partial {
    /// Adds `sign * prod ratio(m)` over `exponents`.
    pub(crate) fn push(&mut self, ctx: &Context, sign: i8, exponents: &[u64]) {
        debug_assert_eq!(exponents.len() as u32, ctx.factors);
        self.count += 1;
        match (&mut self.acc, &ctx.table) {
            (Acc::Scaled(sum), Some(table)) => sum.add(sign, &table.product(exponents)),
            (Acc::Exact(sum), _) => {
                let mut prod = ctx.field.one();
                for &m in exponents {
                    let r = ctx.field.ratio(m as i64).expect("exponents avoid 0 mod n");
                    prod = &prod * &r;
                    if prod.is_zero() {
                        break;
                    }
                }
                *sum = if sign < 0 {
                    &*sum - &prod
                } else {
                    &*sum + &prod
                };
            }
            (Acc::Scaled(_), None) => unreachable!("scaled accumulator without a table"),
        }
    }

    fn merge(self, other: Partial) -> Partial {
        let acc = match (self.acc, other.acc) {
            (Acc::Scaled(a), Acc::Scaled(b)) => Acc::Scaled(a.merge(b)),
            (Acc::Exact(a), Acc::Exact(b)) => Acc::Exact(&a + &b),
            _ => unreachable!("mixed accumulators"),
        };
        Partial {
            acc,
            count: self.count + other.count,
        }
    }

    fn finish(self, ctx: &Context) -> (CycloNumber, u64) {
        let value = match (self.acc, &ctx.table) {
            (Acc::Scaled(sum), Some(table)) => sum.finish(table),
            (Acc::Exact(x), _) => x,
            (Acc::Scaled(_), None) => unreachable!(),
        };
        (value, self.count)
    }
}

pub(crate) fn effective_jobs(jobs: usize) -> usize {
    if jobs == 0 {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    } else {
        jobs
    }
}

/// Runs `emit` over every work item and returns the total and the number of
/// summands pushed.
pub(crate) fn run<T, F>(
    ctx: &Context,
    items: &[T],
    jobs: usize,
    emit: F,
) -> Result<(CycloNumber, u64)>
where
    T: Sync,
    F: Fn(&T, &mut Partial) + Sync,
{
    let jobs = effective_jobs(jobs);
    if jobs <= 1 || items.len() <= 1 {
        let mut acc = ctx.empty();
        for item in items {
            emit(item, &mut acc);
        }
        return Ok(acc.finish(ctx));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| WangSunError::Pool(e.to_string()))?;
    let total = pool.install(|| {
        items
            .par_iter()
            .fold(
                || ctx.empty(),
                |mut acc, item| {
                    emit(item, &mut acc);
                    acc
                },
            )
            .reduce(|| ctx.empty(), Partial::merge)
    });
    Ok(total.finish(ctx))
}
