//! Exact arithmetic: rationals, sparse multivariate polynomials and the small
//! amount of dense rational linear algebra the geometry modules need.

mod linalg;
mod polynomial;

pub use linalg::{RationalMatrix, SolveOutcome};
pub use polynomial::{Monomial, Polynomial};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Largest chart dimension supported (a product of two 7-dimensional charts).
pub const MAX_VARIABLES: usize = 14;
/// Largest total degree a stored monomial may reach.
pub const MAX_DEGREE: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("coordinate index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("polynomial degree {degree} exceeds the limit of {MAX_DEGREE}")]
    DegreeLimit { degree: u32 },
    #[error("{n} variables requested; at most {MAX_VARIABLES} are supported")]
    TooManyVariables { n: usize },
    #[error("zero-dimensional chart")]
    EmptyChart,
    #[error("cannot convert non-finite float {0} to a rational")]
    NonFinite(String),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact rational value of a finite float (every finite `f64` is dyadic).
pub fn rational_from_f64(x: f64) -> Result<Rational, AlgebraError> {
    Rational::from_float(x).ok_or_else(|| AlgebraError::NonFinite(x.to_string()))
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        // Huge numerators/denominators: scale down before dividing.
        _ => {
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
            let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// `p/q` when the denominator is not one, `p` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn is_one(q: &Rational) -> bool {
    q.is_one()
}

pub(crate) fn is_negative(q: &Rational) -> bool {
    q.is_negative()
}
