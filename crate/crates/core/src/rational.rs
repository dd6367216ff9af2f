//! Exact rational numbers for transform parameters and exponent certification.
//!
//! The polynomial families take parameters like alpha = 4/3 whose products
//! with summation indices must certify as integers before they can become
//! exponents of q. [`ExactRational`] wraps an arbitrary-precision reduced
//! fraction and exposes exactly that certification step.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive, Zero};

use crate::error::{QError, QResult};

/// An exact fraction, always reduced, denominator >= 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    /// Build `num/den`, reducing to lowest terms. Fails on a zero denominator.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> QResult<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(QError::Range("rational with zero denominator".into()));
        }
        Ok(ExactRational(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always >= 1.
    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// The integer value, when the fraction is integral.
    pub fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    /// Integer value narrowed to `i64`; `None` when non-integral or out of range.
    pub fn to_i64(&self) -> Option<i64> {
        self.to_bigint().and_then(|b| b.to_i64())
    }

    pub fn mul_int(&self, n: i64) -> Self {
        ExactRational(&self.0 * BigRational::from_integer(BigInt::from(n)))
    }

    pub fn add_int(&self, n: i64) -> Self {
        ExactRational(&self.0 + BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                (&self).$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add);
impl_binop!(Sub, sub);
impl_binop!(Mul, mul);

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}

impl Sum for ExactRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}

impl FromStr for ExactRational {
    type Err = QError;

    /// Parses "p/r" or a bare integer "p".
    fn from_str(s: &str) -> QResult<Self> {
        let bad = || QError::Parse(format!("invalid rational {s:?}, expected \"p\" or \"p/r\""));
        let mut parts = s.splitn(2, '/');
        let num_str = parts.next().ok_or_else(bad)?;
        let num = BigInt::from_str(num_str.trim()).map_err(|_| bad())?;
        match parts.next() {
            None => Ok(Self::from_int(num)),
            Some(den_str) => {
                let den = BigInt::from_str(den_str.trim()).map_err(|_| bad())?;
                if den.is_negative() || den.is_zero() {
                    return Err(QError::Parse(format!(
                        "invalid rational {s:?}: denominator must be positive"
                    )));
                }
                Self::new(num, den)
            }
        }
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), self.denominator())
        }
    }
}
