//! The affine general linear group on `Z/nZ` for even `n = 2k`.
//!
//! An element `e^u.v` acts by `x -> v x + u` with `v` a unit. This module
//! enumerates the group, its derangements, and its involutive derangements
//! (quasipolarities), and converts elements into plain permutations.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::arith;
use crate::permutation::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AffineError {
    #[error("modulus must be a positive even integer, got {0}")]
    BadModulus(i64),
    #[error("{v} is not a unit modulo {n}")]
    NotAUnit { v: i64, n: u64 },
    #[error("residue {x} out of range for modulus {n}")]
    OutOfRange { x: u64, n: u64 },
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("{v} is not the linear part of a quasipolarity modulo {n}")]
    NotQuasipolarityLinearPart { v: u64, n: u64 },
    #[error(
        "characterization disagrees with brute force for k = {k}: {missing} missing, {spurious} spurious"
    )]
    CharacterizationMismatch {
        k: u64,
        missing: usize,
        spurious: usize,
    },
}

/// `e^u.v : x -> v x + u` on `Z/nZ`, stored with `u, v` reduced into `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineMap {
    n: u64,
    u: u64,
    v: u64,
}

fn check_modulus(n: i64) -> Result<u64, AffineError> {
    if n >= 2 && n % 2 == 0 {
        Ok(n as u64)
    } else {
        Err(AffineError::BadModulus(n))
    }
}

impl AffineMap {
    /// Builds `e^u.v` on `Z/nZ`, reducing both parts modulo `n`.
    pub fn new(u: i64, v: i64, n: i64) -> Result<Self, AffineError> {
        let m = check_modulus(n)?;
        let v_red = v.rem_euclid(n) as u64;
        if v_red.gcd(&m) != 1 {
            return Err(AffineError::NotAUnit { v, n: m });
        }
        Ok(Self {
            n: m,
            u: u.rem_euclid(n) as u64,
            v: v_red,
        })
    }

    pub fn identity(n: u64) -> Result<Self, AffineError> {
        Self::new(0, 1, n as i64)
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Half the modulus; the "tritone" residue.
    pub fn k(&self) -> u64 {
        self.n / 2
    }

    pub fn translation(&self) -> u64 {
        self.u
    }

    pub fn linear(&self) -> u64 {
        self.v
    }

    pub fn apply(&self, x: u64) -> Result<u64, AffineError> {
        if x >= self.n {
            return Err(AffineError::OutOfRange { x, n: self.n });
        }
        Ok(self.image(x))
    }

    #[inline]
    pub(crate) fn image(&self, x: u64) -> u64 {
        (self.v * x + self.u) % self.n
    }

    /// `self ∘ other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self, AffineError> {
        if self.n != other.n {
            return Err(AffineError::ModulusMismatch(self.n, other.n));
        }
        let n = self.n;
        Ok(Self {
            n,
            u: (self.v * other.u + self.u) % n,
            v: (self.v * other.v) % n,
        })
    }

    pub fn inverse(&self) -> Self {
        let n = self.n as i64;
        let inv_v = mod_inverse(self.v as i64, n);
        // x = v^{-1} (y - u)
        let u = (-(inv_v as i128) * self.u as i128).rem_euclid(n as i128) as u64;
        Self {
            n: self.n,
            u,
            v: inv_v as u64,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.u == 0 && self.v == 1
    }

    /// `f ∘ f = id`, evaluated arithmetically: `v^2 = 1` and `u (v + 1) = 0`.
    pub fn is_involution(&self) -> bool {
        let n = self.n;
        (self.v * self.v) % n == 1 % n && (self.u * (self.v + 1)).is_multiple_of(n)
    }

    /// No fixed points, checked pointwise.
    pub fn is_derangement(&self) -> bool {
        (0..self.n).all(|x| self.image(x) != x)
    }

    /// No fixed points, checked arithmetically: `(v - 1) x = -u` is solvable
    /// iff `sigma(v) | u`.
    pub fn is_derangement_arithmetic(&self) -> bool {
        let (sigma, _) = sigma_tau_unchecked(self.v, self.n);
        !self.u.is_multiple_of(sigma)
    }

    pub fn is_quasipolarity(&self) -> bool {
        self.is_involution() && self.is_derangement()
    }

    /// Some `j` has `j - f(j) ≡ k (mod 2k)`, checked pointwise.
    pub fn hits_tritone(&self) -> bool {
        let k = self.k();
        (0..self.n).any(|j| (j + self.n - self.image(j)) % self.n == k)
    }

    /// Arithmetic form of [`hits_tritone`](Self::hits_tritone):
    /// `gcd(1 - v, 2k) | (k + u)`.
    pub fn hits_tritone_arithmetic(&self) -> bool {
        let g = arith::gcd(1 - self.v as i64, self.n as i64);
        (self.k() + self.u).is_multiple_of(g)
    }

    pub fn permutation(&self) -> Permutation {
        Permutation::new((0..self.n).map(|x| self.image(x) as usize).collect())
            .expect("affine maps with unit linear part are bijective")
    }

    pub fn sign(&self) -> i8 {
        self.permutation().sign()
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^{}.{}", self.u, self.v)
    }
}

fn mod_inverse(a: i64, n: i64) -> i64 {
    if n == 1 {
        return 0;
    }
    let e = a.extended_gcd(&n);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(n)
}

fn sigma_tau_unchecked(v: u64, n: u64) -> (u64, u64) {
    (
        arith::gcd(v as i64 - 1, n as i64),
        arith::gcd(v as i64 + 1, n as i64),
    )
}

/// `(sigma(v), tau(v)) = (gcd(v - 1, n), gcd(v + 1, n))`.
pub fn sigma_tau(v: i64, n: i64) -> Result<(u64, u64), AffineError> {
    let m = check_modulus(n)?;
    let v_red = v.rem_euclid(n) as u64;
    if v_red.gcd(&m) != 1 {
        return Err(AffineError::NotAUnit { v, n: m });
    }
    Ok(sigma_tau_unchecked(v_red, m))
}

/// Whether the unit `v` is the linear part of at least one quasipolarity of
/// `Z/nZ`: `v^2 = 1` and `sigma(v) tau(v) = 2n`.
///
/// `v^2 = 1` alone is not enough once `4 | n/2`; e.g. `v = 3` modulo 8 is
/// involutive but every involution with that linear part has a fixed point.
pub fn is_quasipolarity_linear_part(v: u64, n: u64) -> bool {
    if v.gcd(&n) != 1 || (v * v) % n != 1 % n {
        return false;
    }
    let (s, t) = sigma_tau_unchecked(v % n, n);
    s * t == 2 * n
}

/// The pair `(I1, I2) = (sigma(v)/2, tau(v)/2)` of coprime unitary divisors of
/// `k` attached to a quasipolarity linear part `v` modulo `2k`.
pub fn involution_divisor_pair(v: u64, k: u64) -> Result<(u64, u64), AffineError> {
    let n = 2 * k;
    if k == 0 {
        return Err(AffineError::BadModulus(0));
    }
    if !is_quasipolarity_linear_part(v % n, n) {
        return Err(AffineError::NotQuasipolarityLinearPart { v, n });
    }
    let (s, t) = sigma_tau_unchecked(v % n, n);
    Ok((s / 2, t / 2))
}

/// Every element of the group, ordered by `v` then `u` ascending.
pub fn enumerate_affine_group(n: u64) -> Result<impl Iterator<Item = AffineMap>, AffineError> {
    let n = check_modulus(n as i64)?;
    let units = arith::units(n).expect("n >= 2");
    Ok(units
        .into_iter()
        .flat_map(move |v| (0..n).map(move |u| AffineMap { n, u, v })))
}

/// Affine derangements of `Z/nZ`, in group order.
pub fn enumerate_affine_derangements(
    n: u64,
) -> Result<impl Iterator<Item = AffineMap>, AffineError> {
    Ok(enumerate_affine_group(n)?.filter(AffineMap::is_derangement))
}

/// Quasipolarities of `Z/2kZ` found by testing every group element.
pub fn enumerate_quasipolarities_bruteforce(
    k: u64,
) -> Result<impl Iterator<Item = AffineMap>, AffineError> {
    Ok(enumerate_affine_group(2 * k)?.filter(AffineMap::is_quasipolarity))
}

/// Quasipolarities generated directly from `u = sigma(v) q + 2k / tau(v)`
/// over the admissible linear parts, `q` in `0..2k/sigma(v)`. No brute-force
/// check; see [`quasipolarities_by_characterization`].
pub fn characterization_candidates(k: u64) -> Result<Vec<AffineMap>, AffineError> {
    let n = check_modulus(2 * k as i64)?;
    let mut out = Vec::new();
    for v in arith::units(n).expect("n >= 2") {
        if !is_quasipolarity_linear_part(v, n) {
            continue;
        }
        let (s, t) = sigma_tau_unchecked(v, n);
        let mut us: Vec<u64> = (0..n / s).map(|q| (s * q + n / t) % n).collect();
        us.sort_unstable();
        us.dedup();
        out.extend(us.into_iter().map(|u| AffineMap { n, u, v }));
    }
    Ok(out)
}

/// Quasipolarities via the characterization, validated against brute force.
pub fn quasipolarities_by_characterization(k: u64) -> Result<Vec<AffineMap>, AffineError> {
    let generated = characterization_candidates(k)?;
    let gen_set: BTreeSet<AffineMap> = generated.iter().copied().collect();
    let brute: BTreeSet<AffineMap> = enumerate_quasipolarities_bruteforce(k)?.collect();
    if gen_set != brute || gen_set.len() != generated.len() {
        return Err(AffineError::CharacterizationMismatch {
            k,
            missing: brute.difference(&gen_set).count(),
            spurious: gen_set.difference(&brute).count(),
        });
    }
    Ok(generated)
}
