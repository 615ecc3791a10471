//! Seeded random inputs: small-integer polynomials and forms, G₂ fields
//! from the affine family `x ↦ A x + c` with `A ∈ g₂`, Rochesterian 1-forms
//! built from them, and affine maps.

use std::sync::OnceLock;

use rand::Rng;

use crate::algebra::{int, rat, Monomial, Polynomial, Rational, RationalMatrix};
use crate::exterior::{DifferentialForm, MultiIndex, PolynomialMap, VectorField};
use crate::g2::{infinitesimal_automorphisms, phi0, preset_phi0};

fn small_rational(rng: &mut impl Rng) -> Rational {
    let n = rng.gen_range(-5..=5);
    let d = rng.gen_range(1..=3);
    rat(n, d)
}

fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let q = small_rational(rng);
        if q != int(0) {
            return q;
        }
    }
}

/// Up to `terms` monomials of total degree at most `max_degree`.
pub fn polynomial(rng: &mut impl Rng, dim: usize, max_degree: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(dim);
    for _ in 0..terms {
        let degree = rng.gen_range(0..=max_degree);
        let mut exps = vec![0u32; dim];
        for _ in 0..degree {
            exps[rng.gen_range(0..dim)] += 1;
        }
        p = &p + &Polynomial::monomial(Monomial::new(exps), nonzero_rational(rng));
    }
    p
}

/// A `degree`-form with up to `terms` basis terms and polynomial coefficients.
pub fn form(
    rng: &mut impl Rng,
    dim: usize,
    degree: usize,
    max_degree: u32,
    terms: usize,
) -> DifferentialForm {
    let basis = MultiIndex::all(dim, degree);
    let mut out = DifferentialForm::zero(dim, degree).expect("degree at most dim");
    for _ in 0..terms {
        let idx = &basis[rng.gen_range(0..basis.len())];
        let t = DifferentialForm::term(polynomial(rng, dim, max_degree, 2), &idx.to_vec())
            .expect("valid index");
        out = &out + &t;
    }
    out
}

pub fn field(rng: &mut impl Rng, dim: usize, max_degree: u32) -> VectorField {
    VectorField::new(
        (0..dim)
            .map(|_| polynomial(rng, dim, max_degree, 2))
            .collect(),
    )
    .expect("dim components")
}

/// A rational point with small entries.
pub fn point(rng: &mut impl Rng, dim: usize) -> Vec<Rational> {
    (0..dim).map(|_| small_rational(rng)).collect()
}

/// The 14 linear fields spanning `g₂`, computed once.
pub fn g2_basis() -> &'static [VectorField] {
    static BASIS: OnceLock<Vec<VectorField>> = OnceLock::new();
    BASIS.get_or_init(|| infinitesimal_automorphisms(&preset_phi0()).expect("phi0 is constant"))
}

/// `x ↦ A x + c` with `A` a random combination of the `g₂` basis.
pub fn g2_field(rng: &mut impl Rng) -> VectorField {
    let constant: Vec<Rational> = (0..7).map(|_| small_rational(rng)).collect();
    let mut x = VectorField::constant(&constant).expect("seven components");
    for b in g2_basis() {
        if rng.gen_bool(0.4) {
            x = &x + &b.scale(&small_rational(rng));
        }
    }
    x
}

/// `primitive(X⌟φ₀) + df` for a random G₂ field `X` and polynomial `f`; its
/// Rochesterian field is `X`.
pub fn rochesterian_form(rng: &mut impl Rng) -> (DifferentialForm, VectorField) {
    let x = g2_field(rng);
    let primitive = phi0()
        .interior(&x)
        .and_then(|a| a.poincare_primitive())
        .expect("G2 fields have closed contractions");
    let noise = DifferentialForm::function(polynomial(rng, 7, 2, 2))
        .exterior_derivative()
        .expect("functions have derivatives");
    (&primitive + &noise, x)
}

/// An invertible affine map of `ℝ^dim` with a certified inverse.
pub fn affine_map(rng: &mut impl Rng, dim: usize) -> PolynomialMap {
    loop {
        let rows = (0..dim)
            .map(|_| (0..dim).map(|_| int(rng.gen_range(-2..=2))).collect())
            .collect();
        let m = RationalMatrix::from_rows(rows);
        if m.determinant() == int(0) {
            continue;
        }
        let offset: Vec<Rational> = (0..dim).map(|_| small_rational(rng)).collect();
        return PolynomialMap::affine(&m, &offset).expect("invertible");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2::{is_g2_vector_field, rochesterian_field_of};
    use crate::numeric::seeded_rng;

    #[test]
    fn families_have_the_advertised_properties() {
        let mut rng = seeded_rng(11);
        let g = preset_phi0();
        for _ in 0..3 {
            assert!(is_g2_vector_field(&g, &g2_field(&mut rng)).unwrap().is_g2);
            let (alpha, x) = rochesterian_form(&mut rng);
            assert_eq!(rochesterian_field_of(&g, &alpha).unwrap(), x);
            assert!(affine_map(&mut rng, 7).inverse().is_some());
        }
        assert_eq!(form(&mut rng, 4, 2, 2, 3).degree(), 2);
    }
}
