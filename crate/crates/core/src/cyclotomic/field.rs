use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::{self, QPoly};
use super::{CycloError, Rational};

/// `Q(zeta_n)` in the power basis `1, X, .., X^(phi(n)-1)` modulo `Phi_n(X)`,
/// where `X` is the abstract generator.
///
/// The field's distinguished root is `zeta = X^a` with `a = root_exponent`,
/// so [`root_power`](CycloField::root_power)`(m)` is `X^(a m)`. Every choice
/// of `a` coprime to `n` gives the same ring with a different embedding of
/// the symbol `zeta`.
pub struct CycloField {
    n: u64,
    root_exponent: u64,
    phi: usize,
    min_poly: Vec<i64>,
    ratios: OnceLock<Vec<QPoly>>,
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CycloField")
            .field("n", &self.n)
            .field("root_exponent", &self.root_exponent)
            .field("phi", &self.phi)
            .finish()
    }
}

impl CycloField {
    /// Field of `n`-th roots of unity with `zeta = X^a`.
    pub fn new(n: u64, root_exponent: i64) -> Result<Arc<Self>, CycloError> {
        if n == 0 {
            return Err(CycloError::BadConductor(n));
        }
        let a = root_exponent.rem_euclid(n as i64) as u64;
        if a.gcd(&n) != 1 {
            return Err(CycloError::RootExponentNotCoprime {
                a: root_exponent,
                n,
            });
        }
        let min_poly = poly::cyclotomic_polynomial(n);
        Ok(Arc::new(Self {
            n,
            root_exponent: a,
            phi: min_poly.len() - 1,
            min_poly,
            ratios: OnceLock::new(),
        }))
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn root_exponent(&self) -> u64 {
        self.root_exponent
    }

    /// Degree of the field, `phi(n)`.
    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn min_poly(&self) -> &[i64] {
        &self.min_poly
    }

    fn reduced(self: &Arc<Self>, mut coeffs: QPoly) -> CycloNumber {
        poly::q_reduce_monic(&mut coeffs, &self.min_poly);
        CycloNumber {
            field: Arc::clone(self),
            coeffs,
        }
    }

    pub fn zero(self: &Arc<Self>) -> CycloNumber {
        CycloNumber {
            field: Arc::clone(self),
            coeffs: vec![BigRational::zero(); self.phi],
        }
    }

    pub fn one(self: &Arc<Self>) -> CycloNumber {
        self.constant(Rational::one())
    }

    pub fn constant(self: &Arc<Self>, c: Rational) -> CycloNumber {
        let mut z = self.zero();
        z.coeffs[0] = c.into_inner();
        z
    }

    /// Element with the given coefficients on `1, X, X^2, ..` (any length;
    /// reduced modulo `Phi_n`).
    pub fn from_coeffs(self: &Arc<Self>, coeffs: Vec<Rational>) -> CycloNumber {
        self.reduced(coeffs.into_iter().map(Rational::into_inner).collect())
    }

    /// `X^e` for the abstract generator, ignoring the root choice.
    pub fn generator_power(self: &Arc<Self>, e: i64) -> CycloNumber {
        let e = e.rem_euclid(self.n as i64) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        self.reduced(c)
    }

    /// `zeta^m`.
    pub fn root_power(self: &Arc<Self>, m: i64) -> CycloNumber {
        let e = (self.root_exponent as i128 * m as i128).rem_euclid(self.n as i128);
        self.generator_power(e as i64)
    }

    fn ratio_table(self: &Arc<Self>) -> &[QPoly] {
        self.ratios.get_or_init(|| {
            let modulus = poly::q_from_int(&self.min_poly);
            (0..self.n as i64)
                .map(|m| {
                    if m == 0 {
                        return Vec::new();
                    }
                    let mut num = self.root_power(m);
                    num.coeffs[0] += BigRational::one();
                    let mut den = -self.root_power(m);
                    den.coeffs[0] += BigRational::one();
                    let inv = poly::q_inverse_mod(&den.coeffs, &modulus)
                        .expect("1 - zeta^m is nonzero for m not divisible by n");
                    let mut prod = poly::q_mul(&num.coeffs, &inv);
                    poly::q_reduce_monic(&mut prod, &self.min_poly);
                    prod
                })
                .collect()
        })
    }

    /// `(1 + zeta^m) / (1 - zeta^m)`, from a table built once per field.
    pub fn ratio(self: &Arc<Self>, m: i64) -> Result<CycloNumber, CycloError> {
        let m = m.rem_euclid(self.n as i64);
        if m == 0 {
            return Err(CycloError::ZeroDenominator);
        }
        let coeffs = self.ratio_table()[m as usize].clone();
        Ok(CycloNumber {
            field: Arc::clone(self),
            coeffs,
        })
    }

    /// Raw ratio-table coefficients for `m` in `1..n`; index 0 is empty.
    pub(crate) fn ratio_coeffs(self: &Arc<Self>) -> &[QPoly] {
        self.ratio_table()
    }

    /// The numeric value of `zeta`, `exp(2 pi i a / n)`.
    pub fn zeta_numeric(&self) -> Complex64 {
        Complex64::from_polar(
            1.0,
            std::f64::consts::TAU * self.root_exponent as f64 / self.n as f64,
        )
    }
}

/// An exact element of a [`CycloField`], always reduced modulo `Phi_n`.
#[derive(Clone)]
pub struct CycloNumber {
    field: Arc<CycloField>,
    coeffs: QPoly,
}

impl CycloNumber {
    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    /// Coefficients on `1, X, .., X^(phi(n)-1)`.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.coeffs.iter().cloned().map(Rational::from).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<(), CycloError> {
        if self.field.n != other.field.n {
            return Err(CycloError::FieldMismatch(self.field.n, other.field.n));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            field: Arc::clone(&self.field),
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            field: Arc::clone(&self.field),
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        let prod = poly::q_mul(&self.coeffs, &other.coeffs);
        Ok(self.field.reduced(prod))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * c.inner()).collect();
        Self {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }

    /// Multiplicative inverse via extended Euclid against `Phi_n`.
    pub fn inv(&self) -> Result<Self, CycloError> {
        let modulus = poly::q_from_int(&self.field.min_poly);
        let inv = poly::q_inverse_mod(&self.coeffs, &modulus).ok_or(CycloError::DivisionByZero)?;
        Ok(self.field.reduced(inv))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CycloError> {
        self.checked_mul(&other.inv()?)
    }

    /// The constant coefficient, if every other coefficient is exactly zero.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| Rational::from(self.coeffs[0].clone()))
    }

    /// Image under the automorphism `X -> X^a`.
    pub fn galois_twist(&self, a: i64) -> Result<Self, CycloError> {
        let n = self.field.n;
        if (a.rem_euclid(n as i64) as u64).gcd(&n) != 1 {
            return Err(CycloError::RootExponentNotCoprime { a, n });
        }
        let mut out = vec![BigRational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = (a as i128 * i as i128).rem_euclid(n as i128) as usize;
                out[e] += c;
            }
        }
        Ok(self.field.reduced(out))
    }

    /// Numeric value with `X = exp(2 pi i / n)`.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.field.n as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let w = Complex64::from_polar(1.0, std::f64::consts::TAU * i as f64 / n);
                w * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNumber {}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let r = Rational::from(c.clone());
            match i {
                0 => write!(f, "{r}")?,
                1 => write!(f, "({r})*X")?,
                _ => write!(f, "({r})*X^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! panicking_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&CycloNumber> for &CycloNumber {
            type Output = CycloNumber;
            fn $m(self, rhs: &CycloNumber) -> CycloNumber {
                self.$checked(rhs)
                    .expect("operands from different cyclotomic fields")
            }
        }
        impl $tr for CycloNumber {
            type Output = CycloNumber;
            fn $m(self, rhs: CycloNumber) -> CycloNumber {
                (&self).$m(&rhs)
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(mut self) -> CycloNumber {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    fn num(f: &Arc<CycloField>, c: &[i64]) -> CycloNumber {
        f.from_coeffs(c.iter().map(|&x| Rational::from(x)).collect())
    }

    #[test]
    fn field_construction() {
        let f = CycloField::new(4, 1).unwrap();
        assert_eq!(f.min_poly(), &[1, 0, 1]);
        assert_eq!(f.degree(), 2);
        assert!(CycloField::new(4, 3).is_ok());
        assert!(matches!(
            CycloField::new(6, 2),
            Err(CycloError::RootExponentNotCoprime { .. })
        ));
        assert!(CycloField::new(0, 1).is_err());
    }

    #[test]
    fn root_powers() {
        let f6 = CycloField::new(6, 1).unwrap();
        assert_eq!(f6.root_power(7), f6.root_power(1));
        let f4 = CycloField::new(4, 1).unwrap();
        assert_eq!(f4.root_power(2).as_rational(), Some(Rational::from(-1)));
        assert_eq!(f4.root_power(3), num(&f4, &[0, -1]));
        for k in 1..=12u64 {
            for a in arith::units(2 * k).unwrap() {
                let f = CycloField::new(2 * k, a as i64).unwrap();
                assert_eq!(
                    f.root_power(k as i64).as_rational(),
                    Some(Rational::from(-1)),
                    "k={k} a={a}"
                );
            }
        }
    }

    #[test]
    fn ring_ops() {
        let f4 = CycloField::new(4, 1).unwrap();
        assert!(f4
            .root_power(1)
            .checked_mul(&f4.root_power(3))
            .unwrap()
            .is_one());
        let f3 = CycloField::new(3, 1).unwrap();
        let s = &(&f3.root_power(1) + &f3.root_power(2)) + &f3.one();
        assert!(s.is_zero());
        let z = f4.root_power(1).checked_mul(&f4.zero()).unwrap();
        assert!(z.is_zero());
        let f6 = CycloField::new(6, 1).unwrap();
        assert!(matches!(
            f4.one().checked_add(&f6.one()),
            Err(CycloError::FieldMismatch(4, 6))
        ));
    }

    #[test]
    fn inverses() {
        let f4 = CycloField::new(4, 1).unwrap();
        assert_eq!(f4.root_power(1).inv().unwrap(), num(&f4, &[0, -1]));
        assert_eq!(
            f4.constant(Rational::from(2)).inv().unwrap().as_rational(),
            Some(q(1, 2))
        );
        let one_minus_i = num(&f4, &[1, -1]);
        assert_eq!(
            one_minus_i.inv().unwrap(),
            f4.from_coeffs(vec![q(1, 2), q(1, 2)])
        );
        assert_eq!(f4.zero().inv(), Err(CycloError::DivisionByZero));
    }

    #[test]
    fn rationality() {
        let f4 = CycloField::new(4, 1).unwrap();
        assert_eq!(f4.constant(q(7, 3)).as_rational(), Some(q(7, 3)));
        assert_eq!(f4.root_power(1).as_rational(), None);
        let s = &f4.root_power(1) + &f4.root_power(3);
        assert_eq!(s.as_rational(), Some(Rational::zero()));
    }

    #[test]
    fn ratio_examples() {
        let f4 = CycloField::new(4, 1).unwrap();
        assert_eq!(f4.ratio(1).unwrap(), f4.root_power(1));
        assert_eq!(f4.ratio(3).unwrap(), num(&f4, &[0, -1]));
        assert_eq!(f4.ratio(0), Err(CycloError::ZeroDenominator));
        assert_eq!(f4.ratio(8), Err(CycloError::ZeroDenominator));
        for k in 1..=10i64 {
            let f = CycloField::new(2 * k as u64, 1).unwrap();
            assert!(f.ratio(k).unwrap().is_zero());
        }
    }

    #[test]
    fn ratio_table_is_odd_and_matches_direct_division() {
        for n in 2..=30u64 {
            for a in arith::units(n).unwrap() {
                let f = CycloField::new(n, a as i64).unwrap();
                for m in 1..n as i64 {
                    let r = f.ratio(m).unwrap();
                    assert_eq!(f.ratio(n as i64 - m).unwrap(), -r.clone(), "n={n} m={m}");
                    let mut num = f.root_power(m);
                    num = &num + &f.one();
                    let den = &f.one() - &f.root_power(m);
                    assert_eq!(num.checked_div(&den).unwrap(), r);
                }
            }
        }
    }

    #[test]
    fn twist_examples() {
        let f4 = CycloField::new(4, 1).unwrap();
        assert_eq!(
            f4.root_power(1).galois_twist(3).unwrap(),
            num(&f4, &[0, -1])
        );
        let r = f4.constant(q(5, 7));
        assert_eq!(r.galois_twist(3).unwrap(), r);
        let x = num(&f4, &[3, -2]);
        assert_eq!(x.galois_twist(1).unwrap(), x);
        assert!(x.galois_twist(2).is_err());
    }

    #[test]
    fn twisting_ratio_equals_ratio_in_twisted_field() {
        for n in [5u64, 8, 9, 12, 18] {
            let base = CycloField::new(n, 1).unwrap();
            for a in arith::units(n).unwrap() {
                let tw = CycloField::new(n, a as i64).unwrap();
                for m in 1..n as i64 {
                    assert_eq!(
                        base.ratio(m).unwrap().galois_twist(a as i64).unwrap(),
                        tw.ratio(m).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn numeric_shadow_of_ratios() {
        for n in 2..=24u64 {
            let f = CycloField::new(n, 1).unwrap();
            let z = f.zeta_numeric();
            for m in 1..n as i64 {
                let want = (Complex64::new(1.0, 0.0) + z.powi(m as i32))
                    / (Complex64::new(1.0, 0.0) - z.powi(m as i32));
                let got = f.ratio(m).unwrap().to_complex();
                assert!(
                    (got - want).norm() <= 1e-9 * want.norm().max(1.0),
                    "n={n} m={m}"
                );
            }
        }
    }
}
