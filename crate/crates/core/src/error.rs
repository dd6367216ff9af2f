//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors raised by exact polynomial arithmetic and the evaluators built on it.
///
/// Divisibility failures are never approximated away: an inexact quotient
/// means the caller passed invalid parameters or there is a bug, and either
/// way it must surface.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    /// Polynomial division by the zero polynomial.
    #[error("polynomial division by zero")]
    DivisionByZero,

    /// `exact_div` found a nonzero remainder.
    #[error("no exact polynomial quotient: {0}")]
    NotDivisible(String),

    /// A Pochhammer product was requested with a negative length, e.g.
    /// (q^3;q^3)_{n-j-1} with n-j-1 < 0. The caller must exclude such terms.
    #[error("negative Pochhammer length {0}")]
    NegativeLength(i64),

    /// An exponent that must certify as an integer did not. Carries the
    /// summation index and the offending rational value.
    #[error("non-integral exponent {value} at summation index j = {j}")]
    NonIntegralExponent { j: i64, value: String },

    /// A parameter lies outside the domain of the requested operation.
    #[error("{0}")]
    Range(String),

    /// Malformed textual input (rationals, identity names).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type QResult<T> = Result<T, QError>;
