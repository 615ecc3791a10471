use std::fmt;

use super::{same_dim, DifferentialForm, ExteriorError, VectorField};
use crate::algebra::{Polynomial, Rational, RationalMatrix};

/// Polynomial map from an `n`-chart to an `m`-chart, optionally carrying an
/// inverse that has been certified by exact composition in both orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialMap {
    source_dim: usize,
    coordinates: Vec<Polynomial>,
    inverse: Option<Box<PolynomialMap>>,
}

impl PolynomialMap {
    /// `coordinates[i]` is the `(i+1)`-th target coordinate as a polynomial
    /// in the source variables.
    pub fn new(source_dim: usize, coordinates: Vec<Polynomial>) -> Result<Self, ExteriorError> {
        Polynomial::try_zero(source_dim)?;
        Polynomial::try_zero(coordinates.len())?;
        for c in &coordinates {
            same_dim(source_dim, c.dim())?;
        }
        Ok(PolynomialMap {
            source_dim,
            coordinates,
            inverse: None,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self::linear(&RationalMatrix::identity(dim)).expect("identity is invertible")
    }

    /// `x ↦ A x + b`. Invertible square `A` attaches the exact inverse.
    pub fn affine(matrix: &RationalMatrix, offset: &[Rational]) -> Result<Self, ExteriorError> {
        same_dim(matrix.rows(), offset.len())?;
        let n = matrix.cols();
        let vars: Vec<Polynomial> = (1..=n)
            .map(|i| Polynomial::var(n, i))
            .collect::<Result<_, _>>()?;
        let build = |m: &RationalMatrix, b: &[Rational]| -> Vec<Polynomial> {
            (0..m.rows())
                .map(|i| {
                    let mut p = Polynomial::constant(n, b[i].clone());
                    for (j, v) in vars.iter().enumerate() {
                        p = &p + &v.scale(&m[(i, j)]);
                    }
                    p
                })
                .collect()
        };
        let mut map = Self::new(n, build(matrix, offset))?;
        if matrix.rows() == n {
            if let Some(inv) = matrix.inverse() {
                let shift: Vec<Rational> = inv.mul_vec(offset).into_iter().map(|v| -v).collect();
                let inverse = Self::new(n, build(&inv, &shift))?;
                map = map.with_inverse(inverse)?;
            }
        }
        Ok(map)
    }

    pub fn linear(matrix: &RationalMatrix) -> Result<Self, ExteriorError> {
        Self::affine(
            matrix,
            &vec![Rational::from_integer(0.into()); matrix.rows()],
        )
    }

    pub fn translation(offset: &[Rational]) -> Result<Self, ExteriorError> {
        Self::affine(&RationalMatrix::identity(offset.len()), offset)
    }

    pub fn scaling(dim: usize, factor: &Rational) -> Result<Self, ExteriorError> {
        let mut m = RationalMatrix::identity(dim);
        for i in 0..dim {
            m[(i, i)] = factor.clone();
        }
        Self::linear(&m)
    }

    /// Attaches `inverse` after checking `self ∘ inverse = id` and
    /// `inverse ∘ self = id` as exact polynomial identities.
    pub fn with_inverse(mut self, inverse: PolynomialMap) -> Result<Self, ExteriorError> {
        if inverse.source_dim != self.target_dim() || inverse.target_dim() != self.source_dim {
            return Err(ExteriorError::InverseNotCertified);
        }
        let forward = self.compose(&inverse)?;
        let backward = inverse.compose(&self)?;
        if !forward.is_identity() || !backward.is_identity() {
            return Err(ExteriorError::InverseNotCertified);
        }
        let mut inverse = inverse;
        inverse.inverse = None;
        let mut back = self.clone();
        back.inverse = None;
        inverse.inverse = Some(Box::new(back));
        self.inverse = Some(Box::new(inverse));
        Ok(self)
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.coordinates.len()
    }

    pub fn coordinates(&self) -> &[Polynomial] {
        &self.coordinates
    }

    pub fn inverse(&self) -> Option<&PolynomialMap> {
        self.inverse.as_deref()
    }

    pub fn is_identity(&self) -> bool {
        self.source_dim == self.target_dim()
            && self
                .coordinates
                .iter()
                .enumerate()
                .all(|(i, c)| *c == Polynomial::var(self.source_dim, i + 1).expect("in range"))
    }

    /// `self ∘ inner`: apply `inner` first. Certified inverses compose too.
    pub fn compose(&self, inner: &PolynomialMap) -> Result<Self, ExteriorError> {
        same_dim(self.source_dim, inner.target_dim())?;
        let coordinates = self
            .coordinates
            .iter()
            .map(|c| Ok(c.compose(&inner.coordinates)?))
            .collect::<Result<Vec<_>, ExteriorError>>()?;
        let mut out = Self::new(inner.source_dim, coordinates)?;
        if let (Some(a), Some(b)) = (self.inverse(), inner.inverse()) {
            let inv = b.compose_plain(a)?;
            let mut back = out.clone();
            back.inverse = None;
            out.inverse = Some(Box::new(PolynomialMap {
                inverse: Some(Box::new(back)),
                ..inv
            }));
        }
        Ok(out)
    }

    fn compose_plain(&self, inner: &PolynomialMap) -> Result<Self, ExteriorError> {
        let coordinates = self
            .coordinates
            .iter()
            .map(|c| Ok(c.compose(&inner.coordinates)?))
            .collect::<Result<Vec<_>, ExteriorError>>()?;
        Self::new(inner.source_dim, coordinates)
    }

    /// `p ∘ self`, for `p` on the target chart.
    pub fn apply_to(&self, p: &Polynomial) -> Result<Polynomial, ExteriorError> {
        same_dim(self.target_dim(), p.dim())?;
        Ok(p.compose(&self.coordinates)?)
    }

    /// `∂ψ^i/∂x_j`, indexed `[i][j]` (0-based).
    pub fn jacobian(&self) -> Result<Vec<Vec<Polynomial>>, ExteriorError> {
        self.coordinates
            .iter()
            .map(|c| {
                (1..=self.source_dim)
                    .map(|j| Ok(c.partial(j)?))
                    .collect::<Result<Vec<_>, ExteriorError>>()
            })
            .collect()
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<Vec<f64>, ExteriorError> {
        self.coordinates
            .iter()
            .map(|c| Ok(c.eval_f64(point)?))
            .collect()
    }

    /// `ψ* a`: substitute the map into the coefficients and replace each
    /// `dx^i` with `dψ^i`.
    pub fn pullback(&self, form: &DifferentialForm) -> Result<DifferentialForm, ExteriorError> {
        same_dim(self.target_dim(), form.dim())?;
        let n = self.source_dim;
        if form.degree() > n {
            return Err(ExteriorError::DegreeOverflow {
                degree: form.degree(),
                dim: n,
            });
        }
        let differentials = self
            .coordinates
            .iter()
            .map(|c| DifferentialForm::function(c.clone()).exterior_derivative())
            .collect::<Result<Vec<_>, _>>()?;
        let mut out = DifferentialForm::zero(n, form.degree())?;
        'terms: for (idx, coeff) in form.terms() {
            let mut piece = DifferentialForm::function(self.apply_to(coeff)?);
            for i in idx.indices() {
                piece = piece.wedge(&differentials[i - 1])?;
                // a vanishing partial product would leave `piece` short of full degree
                if piece.is_zero() {
                    continue 'terms;
                }
            }
            out = out.checked_add(&piece)?;
        }
        Ok(out)
    }

    /// The field `dψ^{-1} ∘ X ∘ ψ` on the source chart, for `X` on the
    /// target chart.
    pub fn pushforward_inverse(&self, field: &VectorField) -> Result<VectorField, ExteriorError> {
        let inverse = self.inverse().ok_or(ExteriorError::MissingInverse)?;
        same_dim(self.target_dim(), field.dim())?;
        let inv_jacobian = inverse.jacobian()?;
        let pulled: Vec<Polynomial> = field
            .components()
            .iter()
            .map(|c| self.apply_to(c))
            .collect::<Result<_, _>>()?;
        let components = inv_jacobian
            .iter()
            .map(|row| {
                let mut acc = Polynomial::zero(self.source_dim);
                for (dij, xj) in row.iter().zip(&pulled) {
                    if dij.is_zero() || xj.is_zero() {
                        continue;
                    }
                    acc = acc.checked_add(&self.apply_to(dij)?.checked_mul(xj)?)?;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>, ExteriorError>>()?;
        VectorField::new(components)
    }
}

impl fmt::Display for PolynomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, c) in self.coordinates.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn swap_map() -> PolynomialMap {
        let m = RationalMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        PolynomialMap::linear(&m).unwrap()
    }

    #[test]
    fn affine_maps_carry_certified_inverses() {
        let t = PolynomialMap::translation(&[int(1), rat(-1, 2)]).unwrap();
        let inv = t.inverse().unwrap();
        assert!(t.compose(inv).unwrap().is_identity());
        assert!(swap_map().inverse().is_some());
    }

    #[test]
    fn degenerate_pullback_keeps_its_degree() {
        // (x, y) ↦ (1, x²): dψ¹ = 0, so dx¹∧dx² pulls back to the zero 2-form
        let x = Polynomial::var(2, 1).unwrap();
        let psi = PolynomialMap::new(2, vec![Polynomial::one(2), &x * &x]).unwrap();
        let a = DifferentialForm::basis(2, &[1, 2]).unwrap();
        let pulled = psi.pullback(&a).unwrap();
        assert_eq!((pulled.degree(), pulled.is_zero()), (2, true));
    }

    #[test]
    fn bad_inverse_is_rejected() {
        let t = PolynomialMap::translation(&[int(1), int(0)]).unwrap();
        let wrong = PolynomialMap::identity(2);
        assert_eq!(
            PolynomialMap::new(2, t.coordinates().to_vec())
                .unwrap()
                .with_inverse(wrong),
            Err(ExteriorError::InverseNotCertified)
        );
    }

    #[test]
    fn composition_of_inverses() {
        let a = PolynomialMap::translation(&[int(1), int(2)]).unwrap();
        let b = swap_map();
        let ab = a.compose(&b).unwrap();
        let inv = ab.inverse().unwrap();
        assert!(ab.compose(inv).unwrap().is_identity());
        assert!(inv.compose(&ab).unwrap().is_identity());
    }

    #[test]
    fn pushforward_examples() {
        let e1 = VectorField::coordinate(3, 1).unwrap();
        let id = PolynomialMap::identity(3);
        assert_eq!(id.pushforward_inverse(&e1).unwrap(), e1);
        let double = PolynomialMap::scaling(3, &int(2)).unwrap();
        assert_eq!(
            double.pushforward_inverse(&e1).unwrap(),
            e1.scale(&rat(1, 2))
        );
        let bare = PolynomialMap::new(3, double.coordinates().to_vec()).unwrap();
        assert_eq!(
            bare.pushforward_inverse(&e1),
            Err(ExteriorError::MissingInverse)
        );
    }

    #[test]
    fn pullback_of_basis_under_swap() {
        let f = DifferentialForm::basis(2, &[1, 2]).unwrap();
        assert_eq!(swap_map().pullback(&f).unwrap(), -f);
    }
}
