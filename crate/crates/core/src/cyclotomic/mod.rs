//! Exact arithmetic in the cyclotomic field `Q(zeta_n)`.

mod field;
pub mod poly;
mod rational;
pub mod scaled;

use thiserror::Error;

pub use field::{CycloField, CycloNumber};
pub use poly::cyclotomic_polynomial;
pub use rational::{ParseRationalError, Rational};
pub use scaled::{ScaledProduct, ScaledRatioTable, ScaledSum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("conductor must be positive, got {0}")]
    BadConductor(u64),
    #[error("root exponent {a} is not coprime to {n}")]
    RootExponentNotCoprime { a: i64, n: u64 },
    #[error("elements belong to different fields (n = {0} and n = {1})")]
    FieldMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("ratio (1 + zeta^m) / (1 - zeta^m) undefined for m divisible by n")]
    ZeroDenominator,
}
