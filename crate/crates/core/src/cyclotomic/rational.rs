use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exact reduced fraction with arbitrary-size numerator and denominator.
///
/// The textual form is `p/q` in lowest terms with `q > 0`, or just `p` when
/// `q = 1`. Parsing accepts only that canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a canonical rational: {0:?}")]
pub struct ParseRationalError(pub String);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Self(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    pub fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Self(self.0.recip()))
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Self(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn is_canonical_int(s: &str, allow_sign: bool) -> bool {
    let digits = match s.strip_prefix('-') {
        Some(rest) if allow_sign => rest,
        Some(_) => return false,
        None => s,
    };
    !digits.is_empty()
        && digits.bytes().all(|b| b.is_ascii_digit())
        && (digits == "0" || !digits.starts_with('0'))
        && s != "-0"
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p, Some(q)),
            None => (s, None),
        };
        if !is_canonical_int(p, true) {
            return Err(err());
        }
        let numer: BigInt = p.parse().map_err(|_| err())?;
        let Some(q) = q else {
            return Ok(Self::from_integer(numer));
        };
        if !is_canonical_int(q, false) {
            return Err(err());
        }
        let denom: BigInt = q.parse().map_err(|_| err())?;
        if denom <= BigInt::one() {
            return Err(err());
        }
        let r = BigRational::new_raw(numer, denom);
        let reduced = BigRational::new(r.numer().clone(), r.denom().clone());
        if reduced.numer() != r.numer() {
            return Err(err());
        }
        Ok(Self(r))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_forms() {
        assert_eq!(Rational::new(2, 4).to_string(), "1/2");
        assert_eq!(Rational::new(3, -6).to_string(), "-1/2");
        assert_eq!(Rational::new(-2300, 1).to_string(), "-2300");
        assert_eq!(Rational::zero().to_string(), "0");
        assert_eq!(Rational::new(0, -5), Rational::zero());
    }

    #[test]
    fn parse_canonical_only() {
        assert_eq!(
            "1456/27".parse::<Rational>().unwrap(),
            Rational::new(1456, 27)
        );
        assert_eq!("-2300".parse::<Rational>().unwrap(), Rational::from(-2300));
        assert_eq!("0".parse::<Rational>().unwrap(), Rational::zero());
        for bad in [
            "", "2/4", "1/1", "1/0", "1/-3", "+3", "-0", "007", "1/", "/2", "1.5", "1/ 2", "a",
        ] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn serde_as_string() {
        let r = Rational::new(-10643506432i64, 729);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, "\"-10643506432/729\"");
        assert_eq!(serde_json::from_str::<Rational>(&s).unwrap(), r);
    }

    proptest! {
        #[test]
        fn text_round_trip(p in any::<i64>(), q in 1i64..=i64::MAX) {
            let r = Rational::new(p, q);
            prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
        }
    }
}
