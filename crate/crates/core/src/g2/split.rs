use num_traits::Zero;

use super::metric::metric_from_phi;
use super::{contraction_matrix, G2Error, G2Structure};
use crate::algebra::{Polynomial, Rational, RationalMatrix};
use crate::exterior::{DifferentialForm, MultiIndex, VectorField};

/// `a = omega7 + omega14` with `omega7 = witness ⌟ φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoFormSplit {
    pub omega7: DifferentialForm,
    pub omega14: DifferentialForm,
    pub witness_field: Option<VectorField>,
}

/// Projection data for a constant-coefficient structure.
struct Projector {
    /// Inner product on 2-forms in the lexicographic basis.
    inner: RationalMatrix,
    /// Columns: `e_i ⌟ φ` in the same basis.
    images: RationalMatrix,
    /// Inverse of the Gram matrix of the images.
    gram_inverse: RationalMatrix,
}

impl Projector {
    fn new(g2: &G2Structure) -> Result<Self, G2Error> {
        g2.require_constant()?;
        // The metric is B̃ up to a positive constant, and orthogonal
        // projection is unchanged by rescaling the metric; B̃ keeps
        // everything rational.
        let b = metric_from_phi(g2, &[0.0; 7])?.b_tilde;
        let b_inv = b.inverse().expect("positive definite");
        let basis = MultiIndex::all(7, 2);
        let mut inner = RationalMatrix::zeros(basis.len(), basis.len());
        for (r, i) in basis.iter().enumerate() {
            for (c, j) in basis.iter().enumerate() {
                let (i1, i2) = pair(i);
                let (j1, j2) = pair(j);
                inner[(r, c)] =
                    &b_inv[(i1, j1)] * &b_inv[(i2, j2)] - &b_inv[(i1, j2)] * &b_inv[(i2, j1)];
            }
        }
        let images = contraction_matrix(g2.phi());
        let gram = images.transpose().mul(&inner).mul(&images);
        let gram_inverse = gram.inverse().expect("nondegenerate φ");
        Ok(Projector {
            inner,
            images,
            gram_inverse,
        })
    }

    /// Coefficients `c` with `omega7 = Σ c_i e_i ⌟ φ`, one polynomial each.
    fn witness(&self, form: &DifferentialForm) -> Vec<Polynomial> {
        let basis = MultiIndex::all(7, 2);
        let coeffs: Vec<Polynomial> = basis
            .iter()
            .map(|idx| {
                form.coefficient_at(idx)
                    .cloned()
                    .unwrap_or_else(|| Polynomial::zero(7))
            })
            .collect();
        // weights[i][r] = (Gram⁻¹ Imagesᵀ Inner)[i][r]
        let weights = self
            .gram_inverse
            .mul(&self.images.transpose())
            .mul(&self.inner);
        (0..7)
            .map(|i| {
                coeffs
                    .iter()
                    .enumerate()
                    .fold(Polynomial::zero(7), |acc, (r, c)| {
                        let w = &weights[(i, r)];
                        if w.is_zero() || c.is_zero() {
                            acc
                        } else {
                            &acc + &c.scale(w)
                        }
                    })
            })
            .collect()
    }
}

fn pair(idx: &MultiIndex) -> (usize, usize) {
    let v = idx.to_vec();
    (v[0] - 1, v[1] - 1)
}

/// Orthogonal splitting `Ω² = Ω²₇ ⊕ Ω²₁₄`, with `Ω²₇ = {X⌟φ}`, applied
/// coefficient-wise for constant-coefficient `φ`.
pub fn split_two_form(g2: &G2Structure, form: &DifferentialForm) -> Result<TwoFormSplit, G2Error> {
    if form.degree() != 2 {
        return Err(G2Error::WrongDegree {
            expected: 2,
            got: form.degree(),
        });
    }
    let projector = Projector::new(g2)?;
    let witness = VectorField::new(projector.witness(form))?;
    let omega7 = g2.phi().interior(&witness)?;
    let omega14 = form.checked_sub(&omega7)?;
    Ok(TwoFormSplit {
        omega7,
        omega14,
        witness_field: Some(witness),
    })
}

/// Dimensions of `Ω²₇` and `Ω²₁₄`, computed as the rank of the contraction
/// map and the rank of the `Ω²₁₄` projection of the 21 basis 2-forms.
pub fn split_dimensions(g2: &G2Structure) -> Result<(usize, usize), G2Error> {
    let seven = contraction_matrix(g2.phi()).rank();
    let basis = MultiIndex::all(7, 2);
    let mut rows = Vec::with_capacity(basis.len());
    for idx in &basis {
        let form = DifferentialForm::term(Polynomial::one(7), &idx.to_vec())?;
        let omega14 = split_two_form(g2, &form)?.omega14;
        rows.push(
            basis
                .iter()
                .map(|j| {
                    omega14
                        .coefficient_at(j)
                        .map_or_else(Rational::zero, Polynomial::constant_term)
                })
                .collect(),
        );
    }
    let fourteen = RationalMatrix::from_rows(rows).rank();
    Ok((seven, fourteen))
}
