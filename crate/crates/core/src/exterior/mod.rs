//! Exterior calculus on a single polynomial coordinate chart.
//!
//! Forms carry exact polynomial coefficients, so every identity (d∘d = 0,
//! Cartan's formula, functoriality of pullback, ...) is checked as an exact
//! equality of canonical representations rather than up to a tolerance.
//!
//! Conventions:
//! - basis multi-indices are 1-based and strictly increasing;
//! - `X ⌟ a` contracts `X` into the *first* slot of `a`;
//! - `dx^I (v_1, ..., v_k) = det[v_a^{i_b}]`.

mod calculus;
mod field;
mod form;
mod index;
mod map;

pub use field::VectorField;
pub use form::DifferentialForm;
pub use index::MultiIndex;
pub use map::PolynomialMap;

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("no forms of degree {degree} exist on a {dim}-dimensional chart")]
    DegreeOverflow { degree: usize, dim: usize },
    #[error("cannot contract a vector field into a 0-form")]
    ContractionOfFunction,
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("multi-index {0:?} is not strictly increasing")]
    UnsortedMultiIndex(Vec<usize>),
    #[error("vector field needs {expected} components, got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("map carries no certified inverse")]
    MissingInverse,
    #[error("proposed inverse does not compose to the identity")]
    InverseNotCertified,
    #[error("form is not closed; its exterior derivative is {0}")]
    NotClosed(Box<DifferentialForm>),
    #[error("primitives are only defined for forms of degree at least 1")]
    PrimitiveOfFunction,
}

pub(crate) fn same_dim(left: usize, right: usize) -> Result<(), ExteriorError> {
    if left == right {
        Ok(())
    } else {
        Err(ExteriorError::DimensionMismatch { left, right })
    }
}
