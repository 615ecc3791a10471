use super::{same_dim, DifferentialForm, ExteriorError, VectorField};
use crate::algebra::{Polynomial, Rational};

impl DifferentialForm {
    /// `L_X a = d(X ⌟ a) + X ⌟ d a`. At top degree the second term is
    /// dropped (`d a` does not exist there); on functions `L_X f = X(f)`.
    pub fn lie_derivative(&self, field: &VectorField) -> Result<DifferentialForm, ExteriorError> {
        same_dim(self.dim(), field.dim())?;
        if self.degree() == 0 {
            return self.exterior_derivative()?.interior(field);
        }
        let first = self.interior(field)?.exterior_derivative()?;
        if self.is_top_degree() {
            return Ok(first);
        }
        first.checked_add(&self.exterior_derivative()?.interior(field)?)
    }

    /// Primitive of a closed form via the radial homotopy operator.
    ///
    /// Each monomial term `c x^m dx^I` of total degree `d` contributes
    /// `c/(d+k) · R ⌟ (x^m dx^I)` with `R = Σ x_i ∂_i`, which integrates
    /// `t^{d+k-1}` over `[0, 1]` exactly.
    pub fn poincare_primitive(&self) -> Result<DifferentialForm, ExteriorError> {
        let k = self.degree();
        if k == 0 {
            return Err(ExteriorError::PrimitiveOfFunction);
        }
        if !self.is_top_degree() {
            let da = self.exterior_derivative()?;
            if !da.is_zero() {
                return Err(ExteriorError::NotClosed(Box::new(da)));
            }
        }
        let dim = self.dim();
        let radial = VectorField::radial(dim);
        let mut out = DifferentialForm::zero(dim, k - 1)?;
        for (idx, coeff) in self.terms() {
            for (degree, part) in coeff.homogeneous_parts() {
                let weight = Rational::new(1.into(), (degree as i64 + k as i64).into());
                let piece = DifferentialForm::term(part.scale(&weight), &idx.to_vec())?;
                out = out.checked_add(&piece.interior(&radial)?)?;
            }
        }
        Ok(out)
    }
}

impl VectorField {
    /// `X ⌟ a`.
    pub fn contract(&self, form: &DifferentialForm) -> Result<DifferentialForm, ExteriorError> {
        form.interior(self)
    }

    /// `a(X, Y, ...)` as a polynomial: contract the fields in order into the
    /// leading slots of a form whose degree equals the number of fields.
    pub fn evaluate_form(
        form: &DifferentialForm,
        fields: &[&VectorField],
    ) -> Result<Polynomial, ExteriorError> {
        if fields.len() != form.degree() {
            return Err(ExteriorError::DegreeMismatch {
                left: form.degree(),
                right: fields.len(),
            });
        }
        let mut acc = form.clone();
        for f in fields {
            acc = acc.interior(f)?;
        }
        Ok(acc.as_function().expect("degree 0 after full contraction"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn x(dim: usize, i: usize) -> Polynomial {
        Polynomial::var(dim, i).unwrap()
    }

    fn dx(dim: usize, idx: &[usize]) -> DifferentialForm {
        DifferentialForm::basis(dim, idx).unwrap()
    }

    #[test]
    fn lie_of_scaling_field_on_dx1() {
        let mut comps = vec![Polynomial::zero(3); 3];
        comps[0] = x(3, 1);
        let f = VectorField::new(comps).unwrap();
        assert_eq!(dx(3, &[1]).lie_derivative(&f).unwrap(), dx(3, &[1]));
    }

    #[test]
    fn lie_on_functions_and_top_forms() {
        let e1 = VectorField::coordinate(2, 1).unwrap();
        let f = DifferentialForm::function(&x(2, 1) * &x(2, 2));
        assert_eq!(
            f.lie_derivative(&e1).unwrap(),
            DifferentialForm::function(x(2, 2))
        );
        let vol = DifferentialForm::term(x(2, 1), &[1, 2]).unwrap();
        assert_eq!(vol.lie_derivative(&e1).unwrap(), dx(2, &[1, 2]));
    }

    #[test]
    fn primitive_of_dx1() {
        let p = dx(7, &[1]).poincare_primitive().unwrap();
        assert_eq!(p, DifferentialForm::function(x(7, 1)));
    }

    #[test]
    fn primitive_of_kahler_part() {
        let w = &(&dx(7, &[2, 3]) + &dx(7, &[4, 5])) + &dx(7, &[6, 7]);
        let p = w.poincare_primitive().unwrap();
        let half = rat(1, 2);
        let mut expected = DifferentialForm::zero(7, 1).unwrap();
        for (a, b) in [(2, 3), (4, 5), (6, 7)] {
            expected = &expected + &DifferentialForm::term(x(7, a).scale(&half), &[b]).unwrap();
            expected =
                &expected + &DifferentialForm::term(x(7, b).scale(&-half.clone()), &[a]).unwrap();
        }
        assert_eq!(p, expected);
        assert_eq!(p.exterior_derivative().unwrap(), w);
    }

    #[test]
    fn primitive_rejects_open_forms() {
        let a = DifferentialForm::term(x(3, 2), &[3]).unwrap();
        assert!(matches!(
            a.poincare_primitive(),
            Err(ExteriorError::NotClosed(_))
        ));
        assert_eq!(
            DifferentialForm::function(Polynomial::one(3)).poincare_primitive(),
            Err(ExteriorError::PrimitiveOfFunction)
        );
    }

    #[test]
    fn primitive_of_top_degree_form() {
        let vol = DifferentialForm::term(x(2, 1).scale(&int(3)), &[1, 2]).unwrap();
        let p = vol.poincare_primitive().unwrap();
        assert_eq!(p.exterior_derivative().unwrap(), vol);
    }
}
