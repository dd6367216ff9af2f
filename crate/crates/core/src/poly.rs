//! Exact Laurent polynomial arithmetic over arbitrary-precision integers.
//!
//! [`LaurentPoly`] is the universal value type of the crate: a dense
//! coefficient vector together with the exponent of its lowest term, so
//! negative exponents of q cost nothing extra. Values are immutable after
//! construction and kept in normal form (nonzero first and last stored
//! coefficient; the zero polynomial stores nothing).
//!
//! Multiplication is schoolbook convolution below [`KARATSUBA_THRESHOLD`]
//! and Karatsuba above it. Division is exact only: [`LaurentPoly::exact_div`]
//! fails fast on a nonzero remainder instead of truncating.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{QError, QResult};

/// Coefficient-array length at or above which multiplication switches from
/// schoolbook convolution to Karatsuba. Tuned on desk-scale products of
/// big-integer coefficients, where the crossover sits far lower than it
/// would for machine words.
pub const KARATSUBA_THRESHOLD: usize = 32;

/// A sign, +1 or -1, used for monomial prefactors and Pochhammer factor shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// (-1)^j as a Sign.
    pub fn from_parity(j: i64) -> Sign {
        if j.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// self^j, well-defined for negative j since self is a unit.
    pub fn pow(self, j: i64) -> Sign {
        match self {
            Sign::Plus => Sign::Plus,
            Sign::Minus => Sign::from_parity(j),
        }
    }
}

/// Exact integer-coefficient polynomial in q with possibly negative exponents.
///
/// Invariant (normal form): `coeffs` is empty exactly for the zero polynomial
/// (then `min_exp == 0`); otherwise its first and last entries are nonzero.
/// Index `i` of `coeffs` holds the coefficient of `q^(min_exp + i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { min_exp: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The single term `c * q^e` (zero polynomial when c = 0).
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { min_exp: e, coeffs: vec![c] }
        }
    }

    /// Build from a dense coefficient run starting at `min_exp`, normalizing.
    pub fn from_coeffs(min_exp: i64, coeffs: Vec<BigInt>) -> Self {
        Self::normalize(min_exp, coeffs)
    }

    /// Build from (exponent, coefficient) terms; repeated exponents add.
    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        terms
            .iter()
            .map(|&(e, c)| Self::monomial(c, e))
            .fold(Self::zero(), |acc, t| &acc + &t)
    }

    fn normalize(mut min_exp: i64, mut coeffs: Vec<BigInt>) -> Self {
        let leading = coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading == coeffs.len() {
            return Self::zero();
        }
        if leading > 0 {
            coeffs.drain(..leading);
            min_exp += leading as i64;
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LaurentPoly { min_exp, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.min_exp == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient; `None` for the zero polynomial.
    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min_exp)
    }

    /// Highest exponent with a nonzero coefficient; `None` for the zero polynomial.
    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.min_exp + self.coeffs.len() as i64 - 1)
    }

    /// Coefficient of `q^e` (zero outside the stored range).
    pub fn coeff(&self, e: i64) -> BigInt {
        let idx = e - self.min_exp;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.min_exp + i as i64, c))
    }

    /// Coefficientwise sum.
    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(rhs.min_exp);
        let hi = (self.min_exp + self.coeffs.len() as i64)
            .max(rhs.min_exp + rhs.coeffs.len() as i64);
        let mut out = vec![BigInt::zero(); (hi - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(self.min_exp - lo) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[(rhs.min_exp - lo) as usize + i] += c;
        }
        Self::normalize(lo, out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Convolution product; exponent offsets add.
    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let coeffs = mul_slices(&self.coeffs, &rhs.coeffs);
        Self::normalize(self.min_exp + rhs.min_exp, coeffs)
    }

    /// Exact quotient `self / rhs`.
    ///
    /// Long division from the lowest exponent; any nonzero remainder, at any
    /// step or left over at the end, is an error -- never a truncation.
    pub fn exact_div(&self, rhs: &Self) -> QResult<Self> {
        if rhs.is_zero() {
            return Err(QError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let la = self.coeffs.len();
        let lb = rhs.coeffs.len();
        if la < lb {
            return Err(QError::NotDivisible(format!(
                "dividend support shorter than divisor support ({la} < {lb})"
            )));
        }
        let qlen = la - lb + 1;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); qlen];
        let b0 = &rhs.coeffs[0];
        for i in 0..qlen {
            if rem[i].is_zero() {
                continue;
            }
            let (d, r) = num::Integer::div_rem(&rem[i], b0);
            if !r.is_zero() {
                return Err(QError::NotDivisible(format!(
                    "coefficient {} not divisible by lowest divisor coefficient {b0}",
                    rem[i]
                )));
            }
            for (k, bc) in rhs.coeffs.iter().enumerate() {
                rem[i + k] -= &d * bc;
            }
            quo[i] = d;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(QError::NotDivisible("nonzero remainder".into()));
        }
        Ok(Self::normalize(self.min_exp - rhs.min_exp, quo))
    }

    /// Substitute q -> q^k (k >= 1): every exponent is multiplied by k.
    pub fn dilate(&self, k: i64) -> Self {
        assert!(k >= 1, "dilation factor must be >= 1, got {k}");
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut out = vec![BigInt::zero(); (self.coeffs.len() - 1) * k as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k as usize] = c.clone();
        }
        LaurentPoly { min_exp: self.min_exp * k, coeffs: out }
    }

    /// Substitute q -> q^(-1): Laurent reversal.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let max = self.min_exp + self.coeffs.len() as i64 - 1;
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly { min_exp: -max, coeffs }
    }

    /// Multiply by `sign * q^e`.
    pub fn monomial_mul(&self, sign: Sign, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let coeffs = match sign {
            Sign::Plus => self.coeffs.clone(),
            Sign::Minus => self.coeffs.iter().map(|c| -c).collect(),
        };
        LaurentPoly { min_exp: self.min_exp + e, coeffs }
    }

    /// True iff every coefficient is >= 0.
    pub fn is_nonneg(&self) -> bool {
        !self.coeffs.iter().any(|c| c.is_negative())
    }

    /// Sum of all coefficients, i.e. the value at q = 1.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

fn mul_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.len().min(b.len()) < KARATSUBA_THRESHOLD {
        mul_schoolbook(a, b)
    } else {
        mul_karatsuba(a, b)
    }
}

fn mul_schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// a*b via the three-product split a = a0 + x^m a1, b = b0 + x^m b1.
fn mul_karatsuba(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let m = a.len().min(b.len()) / 2;
    let (a0, a1) = a.split_at(m);
    let (b0, b1) = b.split_at(m);

    let low = mul_slices(a0, b0);
    let high = mul_slices(a1, b1);
    let asum = add_slices(a0, a1);
    let bsum = add_slices(b0, b1);
    let mut mid = mul_slices(&asum, &bsum);
    for (i, c) in low.iter().enumerate() {
        mid[i] -= c;
    }
    for (i, c) in high.iter().enumerate() {
        mid[i] -= c;
    }

    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, c) in low.into_iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in mid.into_iter().enumerate() {
        if !c.is_zero() {
            out[m + i] += c;
        }
    }
    for (i, c) in high.into_iter().enumerate() {
        if !c.is_zero() {
            out[2 * m + i] += c;
        }
    }
    out
}

fn add_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (i, c) in short.iter().enumerate() {
        out[i] += c;
    }
    out
}

macro_rules! impl_poly_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                LaurentPoly::$method(self, rhs)
            }
        }
    };
}

impl_poly_binop!(Add, add);
impl_poly_binop!(Sub, sub);
impl_poly_binop!(Mul, mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(self)
    }
}

/// Ascending exponents, unit coefficients suppressed, negative exponents
/// printed as `q^-2`, the zero polynomial as `0`. Example: `1 + q + 2q^2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if e == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                if e == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Wire format: coefficients as decimal strings so arbitrary precision
/// survives JSON bit-exactly.
#[derive(Serialize, Deserialize)]
struct PolyRepr {
    min_exp: i64,
    coeffs: Vec<String>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|_| D::Error::custom(format!("invalid integer coefficient {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LaurentPoly::normalize(repr.min_exp, coeffs))
    }
}
