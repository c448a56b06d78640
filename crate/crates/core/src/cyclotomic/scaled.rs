//! Integer kernel for long products of ratio-table entries.
//!
//! Every ratio `(1 + zeta^m) / (1 - zeta^m)` is written as `c_m / D` with a
//! common denominator `D` and integral coefficient vectors `c_m`. Since
//! `Phi_n` is monic with integer coefficients, products of the `c_m` reduce
//! modulo `Phi_n` without leaving `Z`. A sum of `f`-fold products is then an
//! integer vector divided by `D^f` once, at the very end.
//!
//! Products are attempted in `i128` with overflow checks; a product that
//! overflows is redone with big integers.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{CycloField, CycloNumber, Rational};

/// Ratio table of one field, rescaled to integer numerators.
#[derive(Debug, Clone)]
pub struct ScaledRatioTable {
    field: Arc<CycloField>,
    phi: usize,
    min_poly_small: Vec<i128>,
    min_poly_big: Vec<BigInt>,
    denom: BigInt,
    small: Vec<Option<Vec<i128>>>,
    big: Vec<Vec<BigInt>>,
    is_zero: Vec<bool>,
}

/// One integral product, before division by `D^factors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScaledProduct {
    Zero,
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

impl ScaledRatioTable {
    pub fn new(field: &Arc<CycloField>) -> Self {
        let ratios = field.ratio_coeffs();
        let phi = field.degree();
        let denom = ratios
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let big: Vec<Vec<BigInt>> = ratios
            .iter()
            .map(|r| {
                let mut v: Vec<BigInt> = r
                    .iter()
                    .map(|c| (c * BigRational::from_integer(denom.clone())).to_integer())
                    .collect();
                v.resize(phi, BigInt::zero());
                v
            })
            .collect();
        let small = big
            .iter()
            .map(|v| {
                v.iter()
                    .map(ToPrimitive::to_i128)
                    .collect::<Option<Vec<_>>>()
            })
            .collect();
        let is_zero = big.iter().map(|v| v.iter().all(Zero::is_zero)).collect();
        let min_poly = field.min_poly();
        Self {
            field: Arc::clone(field),
            phi,
            min_poly_small: min_poly.iter().map(|&c| c as i128).collect(),
            min_poly_big: min_poly.iter().map(|&c| BigInt::from(c)).collect(),
            denom,
            small,
            big,
            is_zero,
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    /// The common denominator `D` of the ratio table.
    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    /// `D^f * prod ratio(m)` over the given exponents (each reduced mod `n`,
    /// none divisible by `n`), as an integer vector.
    pub fn product(&self, exponents: &[u64]) -> ScaledProduct {
        let n = self.field.conductor();
        if exponents.iter().any(|&m| self.is_zero[(m % n) as usize]) {
            return ScaledProduct::Zero;
        }
        debug_assert!(exponents.iter().all(|&m| m % n != 0));
        match self.product_small(exponents, n) {
            Some(v) => ScaledProduct::Small(v),
            None => ScaledProduct::Big(self.product_big(exponents, n)),
        }
    }

    fn product_small(&self, exponents: &[u64], n: u64) -> Option<Vec<i128>> {
        let phi = self.phi;
        let mut acc = match exponents.first() {
            None => {
                let mut one = vec![0i128; phi];
                one[0] = 1;
                return Some(one);
            }
            Some(&m) => self.small[(m % n) as usize].clone()?,
        };
        let mut buf = vec![0i128; 2 * phi - 1];
        for &m in &exponents[1..] {
            let b = self.small[(m % n) as usize].as_ref()?;
            buf.iter_mut().for_each(|x| *x = 0);
            for (i, &x) in acc.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    if y != 0 {
                        buf[i + j] = buf[i + j].checked_add(x.checked_mul(y)?)?;
                    }
                }
            }
            for t in (phi..2 * phi - 1).rev() {
                let c = buf[t];
                if c == 0 {
                    continue;
                }
                for (s, &p) in self.min_poly_small[..phi].iter().enumerate() {
                    if p != 0 {
                        buf[t - phi + s] = buf[t - phi + s].checked_sub(c.checked_mul(p)?)?;
                    }
                }
            }
            acc.copy_from_slice(&buf[..phi]);
        }
        Some(acc)
    }

    fn product_big(&self, exponents: &[u64], n: u64) -> Vec<BigInt> {
        let phi = self.phi;
        let mut acc = vec![BigInt::zero(); phi];
        acc[0] = BigInt::one();
        for &m in exponents {
            let b = &self.big[(m % n) as usize];
            let mut buf = vec![BigInt::zero(); 2 * phi - 1];
            for (i, x) in acc.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    if !y.is_zero() {
                        buf[i + j] += x * y;
                    }
                }
            }
            for t in (phi..2 * phi - 1).rev() {
                let c = std::mem::take(&mut buf[t]);
                if c.is_zero() {
                    continue;
                }
                for (s, p) in self.min_poly_big[..phi].iter().enumerate() {
                    if !p.is_zero() {
                        buf[t - phi + s] -= &c * p;
                    }
                }
            }
            buf.truncate(phi);
            acc = buf;
        }
        acc
    }

    /// Converts a scaled product back into a field element.
    pub fn to_number(&self, product: &ScaledProduct, factors: u32) -> CycloNumber {
        let mut sum = ScaledSum::new(factors, self.phi);
        sum.add(1, product);
        sum.finish(self)
    }
}

/// Running sum of signed scaled products that all have the same number of
/// factors. Partial sums from different workers merge exactly.
#[derive(Debug, Clone)]
pub struct ScaledSum {
    factors: u32,
    small: Vec<i128>,
    big: Vec<BigInt>,
}

impl ScaledSum {
    pub fn new(factors: u32, phi: usize) -> Self {
        Self {
            factors,
            small: vec![0; phi],
            big: vec![BigInt::zero(); phi],
        }
    }

    fn spill(&mut self) {
        for (b, s) in self.big.iter_mut().zip(self.small.iter_mut()) {
            if *s != 0 {
                *b += BigInt::from(std::mem::take(s));
            }
        }
    }

    pub fn add(&mut self, sign: i8, product: &ScaledProduct) {
        match product {
            ScaledProduct::Zero => {}
            ScaledProduct::Small(v) => {
                let fits = self.small.iter().zip(v).all(|(a, &x)| {
                    let x = if sign < 0 { x.checked_neg() } else { Some(x) };
                    x.and_then(|x| a.checked_add(x)).is_some()
                });
                if !fits {
                    self.spill();
                }
                for ((a, b), &x) in self.small.iter_mut().zip(self.big.iter_mut()).zip(v) {
                    let term = if sign < 0 { x.checked_neg() } else { Some(x) };
                    match term.and_then(|t| a.checked_add(t)) {
                        Some(y) => *a = y,
                        None if sign < 0 => *b -= x,
                        None => *b += x,
                    }
                }
            }
            ScaledProduct::Big(v) => {
                for (a, x) in self.big.iter_mut().zip(v) {
                    if sign < 0 {
                        *a -= x;
                    } else {
                        *a += x;
                    }
                }
            }
        }
    }

    pub fn merge(mut self, other: Self) -> Self {
        assert_eq!(
            self.factors, other.factors,
            "merging sums of different arity"
        );
        self.spill();
        for (a, b) in self.big.iter_mut().zip(other.big) {
            *a += b;
        }
        for (a, b) in self.big.iter_mut().zip(other.small) {
            *a += BigInt::from(b);
        }
        self
    }

    /// Divides by `D^factors` and returns the exact field element.
    pub fn finish(mut self, table: &ScaledRatioTable) -> CycloNumber {
        self.spill();
        let scale = num_traits::pow(table.denom.clone(), self.factors as usize);
        let coeffs = self
            .big
            .into_iter()
            .map(|c| Rational::from(BigRational::new(c, scale.clone())))
            .collect();
        table.field.from_coeffs(coeffs)
    }

    /// Largest absolute coefficient currently held, for diagnostics.
    pub fn magnitude_bits(&self) -> u64 {
        let s = self
            .small
            .iter()
            .map(|x| 128 - x.unsigned_abs().leading_zeros() as u64);
        let b = self.big.iter().map(|x| x.abs().bits());
        s.chain(b).max().unwrap_or(0)
    }
}
