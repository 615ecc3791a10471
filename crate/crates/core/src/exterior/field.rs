use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::{same_dim, ExteriorError};
use crate::algebra::{Polynomial, Rational};

/// Polynomial vector field `Σ X^i ∂/∂x_i` in the coordinate frame.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    components: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(components: Vec<Polynomial>) -> Result<Self, ExteriorError> {
        let dim = components.len();
        Polynomial::try_zero(dim)?;
        for c in &components {
            if c.dim() != dim {
                return Err(ExteriorError::ComponentCount {
                    expected: c.dim(),
                    got: dim,
                });
            }
        }
        Ok(VectorField { components })
    }

    pub fn zero(dim: usize) -> Self {
        VectorField {
            components: vec![Polynomial::zero(dim); dim],
        }
    }

    /// The coordinate field `e_index = ∂/∂x_index` (1-based).
    pub fn coordinate(dim: usize, index: usize) -> Result<Self, ExteriorError> {
        if index == 0 || index > dim {
            return Err(ExteriorError::IndexOutOfRange { index, dim });
        }
        let mut f = Self::zero(dim);
        f.components[index - 1] = Polynomial::one(dim);
        Ok(f)
    }

    pub fn constant(values: &[Rational]) -> Result<Self, ExteriorError> {
        let dim = values.len();
        Polynomial::try_zero(dim)?;
        Ok(VectorField {
            components: values
                .iter()
                .map(|v| Polynomial::constant(dim, v.clone()))
                .collect(),
        })
    }

    /// Euler field `Σ x_i ∂/∂x_i`.
    pub fn radial(dim: usize) -> Self {
        VectorField {
            components: (1..=dim)
                .map(|i| Polynomial::var(dim, i).expect("index in range"))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    /// Component along `∂/∂x_index` (1-based).
    pub fn component(&self, index: usize) -> &Polynomial {
        &self.components[index - 1]
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        VectorField {
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExteriorError> {
        same_dim(self.dim(), other.dim())?;
        Ok(VectorField {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Directional derivative `X(f) = Σ X^j ∂_j f`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial, ExteriorError> {
        same_dim(self.dim(), f.dim())?;
        let mut out = Polynomial::zero(f.dim());
        for (j, xj) in self.components.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            out = out.checked_add(&xj.checked_mul(&f.partial(j + 1)?)?)?;
        }
        Ok(out)
    }

    /// Lie bracket `[X, Y]^i = X(Y^i) - Y(X^i)`.
    pub fn bracket(&self, other: &Self) -> Result<Self, ExteriorError> {
        same_dim(self.dim(), other.dim())?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(xi, yi)| Ok(self.apply(yi)?.checked_sub(&other.apply(xi)?)?))
            .collect::<Result<Vec<_>, ExteriorError>>()?;
        Ok(VectorField { components })
    }

    pub fn eval_exact(&self, point: &[Rational]) -> Result<Vec<Rational>, ExteriorError> {
        self.components
            .iter()
            .map(|c| Ok(c.eval_exact(point)?))
            .collect()
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<Vec<f64>, ExteriorError> {
        self.components
            .iter()
            .map(|c| Ok(c.eval_f64(point)?))
            .collect()
    }

    pub fn has_constant_components(&self) -> bool {
        self.components.iter().all(Polynomial::is_constant)
    }
}

/// `[p1, p2, ..., pn]`, the same bracketed list the form language parses.
impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl Add<&VectorField> for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub<&VectorField> for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        self + &(-rhs)
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        VectorField {
            components: self.components.iter().map(|c| -c).collect(),
        }
    }
}
