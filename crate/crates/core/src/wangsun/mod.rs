//! Wang–Sun sums of cyclotomic ratios.
//!
//! Three families share one summation engine:
//!
//! * [`qsum`]: unsigned sum over the quasipolarities `Q_k` of `Z/2kZ`;
//! * [`dsum`]: signed sum over all affine derangements of `Z/2kZ`;
//! * [`classical_sum`]: signed sum over every derangement of `S_(n-1)`.
//!
//! Each summand is `prod_j (1 + zeta^(j - pi(j))) / (1 - zeta^(j - pi(j)))`
//! with `j` running over the whole domain of `pi`.

mod classical;
mod engine;
pub mod numeric;
mod quasipolarity;
mod result;

use thiserror::Error;

use crate::affine::{AffineError, AffineMap};
use crate::cyclotomic::CycloError;

pub use classical::{classical_closed_form, classical_sum};
pub use engine::{Engine, SumOptions};
pub use quasipolarity::{
    affine_summand, common_sign, dsum, qsum, qsum_closed_form, qsum_combinatorial,
    quasipolarity_summand, signed_quasipolarity_sum,
};
pub use result::{SumKind, SumResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WangSunError {
    #[error(transparent)]
    Affine(#[from] AffineError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error("{0} has a fixed point; its summand divides by zero")]
    NotADerangement(AffineMap),
    #[error("classical sum needs an odd n >= 3, got {0}")]
    BadClassicalOrder(u64),
    #[error("k must be at least 1")]
    BadK,
    #[error("{kind} sum for parameter {param} is not rational: {value}")]
    NotRational {
        kind: SumKind,
        param: u64,
        value: String,
    },
    #[error("quasipolarities of Z/{n}Z do not share a sign")]
    SignNotConstant { n: u64 },
    #[error("worker pool: {0}")]
    Pool(String),
}

pub type Result<T> = std::result::Result<T, WangSunError>;
