//! Cross-checks of the sums against their closed forms, the quasipolarity
//! census, the characterization, Galois invariance, and the classical oracle.

use std::fmt;

use serde::Serialize;

use crate::affine;
use crate::arith;
use crate::cyclotomic::{CycloField, Rational};
use crate::wangsun::{self, numeric, SumKind, SumOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// qsum = closed form = even unitary divisor sum = combinatorial count
    Qsum,
    /// |Q_k| = s1*(k)
    Census,
    /// characterization-based enumeration = brute force
    Characterization,
    /// qsum and dsum independent of the chosen primitive root
    Galois,
    /// summands in {0, 1}, support law, common sign
    Support,
    /// symmetric-group sum = closed form
    Classical,
    /// floating-point shadow agrees with exact values
    Shadow,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::Qsum,
        Suite::Census,
        Suite::Characterization,
        Suite::Galois,
        Suite::Support,
        Suite::Classical,
        Suite::Shadow,
    ];

    fn name(self) -> &'static str {
        match self {
            Suite::Qsum => "qsum",
            Suite::Census => "census",
            Suite::Characterization => "characterization",
            Suite::Galois => "galois",
            Suite::Support => "support",
            Suite::Classical => "classical",
            Suite::Shadow => "shadow",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub k_min: u64,
    pub k_max: u64,
    pub n_max: u64,
    pub suite: Suite,
    pub jobs: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            k_min: 1,
            k_max: 12,
            n_max: 9,
            suite: Suite::All,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, suite: Suite, name: String, outcome: Result<String, String>) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.checks.push(Check {
            suite,
            name,
            passed,
            detail,
        });
    }
}

fn eq_or<T: PartialEq + fmt::Display>(label: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{label}: got {got}, expected {want}"))
    }
}

fn qsum_check(k: u64, opts: &SumOptions) -> Result<String, String> {
    let q = wangsun::qsum(k, opts).map_err(|e| e.to_string())?.value;
    let closed = Rational::from(wangsun::qsum_closed_form(k) as i64);
    let even = Rational::from(arith::even_unitary_divisor_sum(k) as i64);
    let comb = Rational::from(wangsun::qsum_combinatorial(k).map_err(|e| e.to_string())? as i64);
    eq_or("closed form", &q, &closed)?;
    eq_or("even unitary divisor sum", &q, &even)?;
    eq_or("combinatorial", &q, &comb)?;
    Ok(format!("qsum = {q}"))
}

fn census_check(k: u64) -> Result<String, String> {
    let count = affine::enumerate_quasipolarities_bruteforce(k)
        .map_err(|e| e.to_string())?
        .count() as u64;
    eq_or("|Q_k| vs s1*(k)", count, arith::unitary_sigma(k))?;
    Ok(format!("|Q_k| = {count}"))
}

fn characterization_check(k: u64) -> Result<String, String> {
    let maps = affine::quasipolarities_by_characterization(k).map_err(|e| e.to_string())?;
    Ok(format!("{} maps match brute force", maps.len()))
}

fn galois_check(k: u64, opts: &SumOptions) -> Result<String, String> {
    let base_q = wangsun::qsum(k, opts).map_err(|e| e.to_string())?.value;
    let base_d = wangsun::dsum(k, opts).map_err(|e| e.to_string())?.value;
    let units = arith::units(2 * k).expect("2k >= 2");
    for &a in &units {
        let o = opts.with_root(a as i64);
        eq_or(
            &format!("qsum with root {a}"),
            &wangsun::qsum(k, &o).map_err(|e| e.to_string())?.value,
            &base_q,
        )?;
        eq_or(
            &format!("dsum with root {a}"),
            &wangsun::dsum(k, &o).map_err(|e| e.to_string())?.value,
            &base_d,
        )?;
    }
    Ok(format!("{} root choices agree", units.len()))
}

fn support_check(k: u64, opts: &SumOptions) -> Result<String, String> {
    let field = CycloField::new(2 * k, opts.root_exponent).map_err(|e| e.to_string())?;
    let mut nonzero = 0;
    for f in affine::enumerate_quasipolarities_bruteforce(k).map_err(|e| e.to_string())? {
        let s = wangsun::quasipolarity_summand(&field, &f).map_err(|e| e.to_string())?;
        if !(s.is_zero() || s.is_one()) {
            return Err(format!("{f}: summand {s} is neither 0 nor 1"));
        }
        let (_, i2) = affine::involution_divisor_pair(f.linear(), k).map_err(|e| e.to_string())?;
        let by_divisor = k.is_multiple_of(2) && i2 % 2 == 0;
        if s.is_one() != !f.hits_tritone() || s.is_one() != by_divisor {
            return Err(format!(
                "{f}: summand {s}, hits_tritone {}, k even and tau/2 even {by_divisor}",
                f.hits_tritone()
            ));
        }
        nonzero += s.is_one() as u32;
    }
    let sign = wangsun::common_sign(k).map_err(|e| e.to_string())?;
    let unsigned = wangsun::qsum(k, opts).map_err(|e| e.to_string())?.value;
    let signed = wangsun::signed_quasipolarity_sum(k, opts)
        .map_err(|e| e.to_string())?
        .value;
    let want = if sign < 0 { -unsigned } else { unsigned };
    eq_or("signed sum vs sign * qsum", &signed, &want)?;
    Ok(format!("{nonzero} unit summands, common sign {sign:+}"))
}

fn classical_check(n: u64, opts: &SumOptions) -> Result<String, String> {
    let r = wangsun::classical_sum(n, opts).map_err(|e| e.to_string())?;
    let closed = wangsun::classical_closed_form(n).map_err(|e| e.to_string())?;
    eq_or("closed form", &r.value, &closed)?;
    Ok(format!("{} over {} derangements", r.value, r.summand_count))
}

fn shadow_check(kind: SumKind, param: u64, opts: &SumOptions) -> Result<String, String> {
    let r = match kind {
        SumKind::Qsum => wangsun::qsum(param, opts),
        SumKind::Dsum => wangsun::dsum(param, opts),
        SumKind::Classical => wangsun::classical_sum(param, opts),
    }
    .map_err(|e| e.to_string())?;
    let approx = numeric::shadow_sum(kind, param, r.root_exponent);
    let shown = format!("{:.9e}{:+.1e}i", approx.re, approx.im);
    if numeric::agrees(&r.value, approx, 1e-9) {
        Ok(format!("{} ~ {shown}", r.value))
    } else {
        Err(format!("exact {} vs numeric {shown}", r.value))
    }
}

pub fn run_verify(cfg: &VerifyConfig) -> VerifyReport {
    let opts = SumOptions::default().with_jobs(cfg.jobs);
    let suites: Vec<Suite> = if cfg.suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![cfg.suite]
    };
    let mut report = VerifyReport::default();
    for suite in suites {
        match suite {
            Suite::Classical => {
                for n in (3..=cfg.n_max).step_by(2) {
                    report.push(suite, format!("n={n}"), classical_check(n, &opts));
                }
            }
            _ => {
                for k in cfg.k_min..=cfg.k_max {
                    let outcome = match suite {
                        Suite::Qsum => qsum_check(k, &opts),
                        Suite::Census => census_check(k),
                        Suite::Characterization => characterization_check(k),
                        Suite::Galois => galois_check(k, &opts),
                        Suite::Support => support_check(k, &opts),
                        Suite::Shadow => shadow_check(SumKind::Qsum, k, &opts).and_then(|a| {
                            shadow_check(SumKind::Dsum, k, &opts)
                                .map(|b| format!("qsum {a}; dsum {b}"))
                        }),
                        Suite::Classical | Suite::All => unreachable!(),
                    };
                    report.push(suite, format!("k={k}"), outcome);
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_range_passes() {
        let cfg = VerifyConfig {
            k_min: 1,
            k_max: 1,
            n_max: 3,
            ..Default::default()
        };
        let report = run_verify(&cfg);
        assert!(
            report.passed(),
            "{:?}",
            report.failures().collect::<Vec<_>>()
        );
        assert_eq!(report.checks.len(), 7);
    }

    #[test]
    fn failures_are_reported() {
        let mut r = VerifyReport::default();
        r.push(Suite::Qsum, "k=1".into(), Err("boom".into()));
        r.push(Suite::Qsum, "k=2".into(), Ok("fine".into()));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }
}
