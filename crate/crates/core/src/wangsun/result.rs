use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SumKind {
    Qsum,
    Dsum,
    Classical,
}

impl SumKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SumKind::Qsum => "qsum",
            SumKind::Dsum => "dsum",
            SumKind::Classical => "classical",
        }
    }
}

impl fmt::Display for SumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SumKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "qsum" => Ok(SumKind::Qsum),
            "dsum" => Ok(SumKind::Dsum),
            "classical" => Ok(SumKind::Classical),
            other => Err(format!("unknown sum kind {other:?}")),
        }
    }
}

/// A computed sum together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumResult {
    pub kind: SumKind,
    /// `k` for `qsum`/`dsum`, `n` for the classical sum.
    pub param: u64,
    pub value: Rational,
    pub root_exponent: u64,
    pub summand_count: u64,
    pub elapsed: Duration,
    /// Parameter lies outside the range tabulated in the literature.
    pub beyond_paper: bool,
}

impl SumResult {
    /// Modulus of the underlying permutation domain / cyclotomic field.
    pub fn conductor(&self) -> u64 {
        match self.kind {
            SumKind::Classical => self.param,
            _ => 2 * self.param,
        }
    }
}
