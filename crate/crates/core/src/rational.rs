//! Exact rational numbers.
//!
//! [`ExactRational`] wraps [`num_rational::BigRational`], which keeps values
//! reduced with a positive denominator. The textual form is always
//! `numerator/denominator` (`0/1`, `-3/4`, `5/1`), so values survive a
//! round-trip through CSV or JSON unchanged.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "ExactRational with zero denominator");
        ExactRational(BigRational::new(numer.into(), denom))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(value.into()))
    }

    pub fn from_biguint(value: &BigUint) -> Self {
        Self::from_integer(BigInt::from(value.clone()))
    }

    /// `numer / denom` for unsigned counts; `None` when `denom` is zero.
    pub fn ratio_of_counts(numer: &BigUint, denom: &BigUint) -> Option<Self> {
        if denom.is_zero() {
            None
        } else {
            Some(Self::new(
                BigInt::from(numer.clone()),
                BigInt::from(denom.clone()),
            ))
        }
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        ExactRational(self.0.abs())
    }

    /// Multiplicative inverse, or `None` for zero.
    pub fn checked_recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(ExactRational(self.0.recip()))
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.checked_recip().map(|inv| self * &inv)
    }

    pub fn pow(&self, exp: u32) -> Self {
        ExactRational(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Nearest `f64`; correct even when numerator and denominator overflow `f64`.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for ExactRational {
    fn from(value: BigRational) -> Self {
        ExactRational(value)
    }
}

impl From<i64> for ExactRational {
    fn from(value: i64) -> Self {
        Self::from_integer(value)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse_int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
        };
        match s.split_once('/') {
            Some((p, q)) => {
                let q = parse_int(q)?;
                if q.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(Self::new(parse_int(p)?, q))
            }
            None => Ok(Self::from_integer(parse_int(s)?)),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like the integer types; use `checked_div` otherwise.
forward_binop!(Div, div);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}

impl Sum for ExactRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExactRational> for ExactRational {
    fn sum<I: Iterator<Item = &'a Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl Product for ExactRational {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}

impl<'a> Product<&'a ExactRational> for ExactRational {
    fn product<I: Iterator<Item = &'a Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        let q = ExactRational::new(6, -8);
        assert_eq!(q.to_string(), "-3/4");
        assert_eq!(ExactRational::new(0, 5).to_string(), "0/1");
        assert_eq!(ExactRational::from_integer(7).to_string(), "7/1");
    }

    #[test]
    fn parse_forms() {
        assert_eq!("2/3".parse::<ExactRational>().unwrap(), ExactRational::new(2, 3));
        assert_eq!("4/-6".parse::<ExactRational>().unwrap(), ExactRational::new(-2, 3));
        assert_eq!("12".parse::<ExactRational>().unwrap(), ExactRational::from_integer(12));
        assert!("1/0".parse::<ExactRational>().is_err());
        assert!("x/2".parse::<ExactRational>().is_err());
    }

    #[test]
    fn to_f64_handles_huge_parts() {
        let big = num_traits::pow(BigInt::from(10), 400);
        let q = ExactRational::new(&big * 2, &big * 3);
        assert!((q.to_f64() - 2.0 / 3.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(p in any::<i64>(), q in 1i64..=i64::MAX) {
            let x = ExactRational::new(p, q);
            let back: ExactRational = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }
    }
}
