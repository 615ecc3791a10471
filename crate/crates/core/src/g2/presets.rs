use super::G2Structure;
use crate::algebra::{int, Polynomial, RationalMatrix};
use crate::exterior::{DifferentialForm, PolynomialMap, VectorField};

fn constant_form(dim: usize, terms: &[(i64, [usize; 3])]) -> DifferentialForm {
    let mut out = DifferentialForm::zero(dim, 3).expect("valid degree");
    for (c, idx) in terms {
        let t = DifferentialForm::term(Polynomial::constant(dim, int(*c)), idx)
            .expect("index in range");
        out = &out + &t;
    }
    out
}

/// `φ₀ = dx¹²³ + dx¹⁴⁵ + dx¹⁶⁷ + dx²⁴⁶ − dx²⁵⁷ − dx³⁴⁷ − dx³⁵⁶`.
pub fn phi0() -> DifferentialForm {
    constant_form(
        7,
        &[
            (1, [1, 2, 3]),
            (1, [1, 4, 5]),
            (1, [1, 6, 7]),
            (1, [2, 4, 6]),
            (-1, [2, 5, 7]),
            (-1, [3, 4, 7]),
            (-1, [3, 5, 6]),
        ],
    )
}

pub fn preset_phi0() -> G2Structure {
    G2Structure::new("phi0", phi0()).expect("phi0 is a closed G2-structure")
}

/// `★φ₀ = dx⁴⁵⁶⁷ + dx²³⁶⁷ + dx²³⁴⁵ + dx¹³⁵⁷ − dx¹³⁴⁶ − dx¹²⁵⁶ − dx¹²⁴⁷`.
pub fn preset_star_phi0() -> DifferentialForm {
    let mut out = DifferentialForm::zero(7, 4).expect("valid degree");
    for (c, idx) in [
        (1, [4, 5, 6, 7]),
        (1, [2, 3, 6, 7]),
        (1, [2, 3, 4, 5]),
        (1, [1, 3, 5, 7]),
        (-1, [1, 3, 4, 6]),
        (-1, [1, 2, 5, 6]),
        (-1, [1, 2, 4, 7]),
    ] {
        let t =
            DifferentialForm::term(Polynomial::constant(7, int(c)), &idx).expect("index in range");
        out = &out + &t;
    }
    out
}

/// Closed G₂-structure on `T*ℝ³ × ℝ` with coordinates
/// `(x1, x2, x3, y1, y2, y3, t)`:
/// `φ = Re((dx1 + i dy1)∧(dx2 + i dy2)∧(dx3 + i dy3)) + ω∧dt`, where
/// `ω = dλ = Σ dyᵢ∧dxᵢ` is the differential of the tautological 1-form
/// `λ = Σ yᵢ dxᵢ`. With this sign `∂/∂t ⌟ φ = dλ`, so `∂/∂t` is
/// Rochesterian with Rochesterian 1-form `λ`.
pub fn preset_cst() -> G2Structure {
    let (x1, x2, x3, y1, y2, y3, t) = (1, 2, 3, 4, 5, 6, 7);
    let phi = constant_form(
        7,
        &[
            // real part of the holomorphic volume form
            (1, [x1, x2, x3]),
            (-1, [x1, y2, y3]),
            (-1, [y1, x2, y3]),
            (-1, [y1, y2, x3]),
            // ω ∧ dt
            (1, [y1, x1, t]),
            (1, [y2, x2, t]),
            (1, [y3, x3, t]),
        ],
    );
    G2Structure::new("cst", phi).expect("cst form is a closed G2-structure")
}

/// `λ = y1 dx1 + y2 dx2 + y3 dx3` in the coordinates of [`preset_cst`].
pub fn tautological_one_form() -> DifferentialForm {
    let mut out = DifferentialForm::zero(7, 1).expect("valid degree");
    for i in 1..=3 {
        let y = Polynomial::var(7, i + 3).expect("index in range");
        out = &out + &DifferentialForm::term(y, &[i]).expect("index in range");
    }
    out
}

/// `x3 e2 − x2 e3 + x5 e4 − x4 e5 − 2 x7 e6 + 2 x6 e7`: simultaneous
/// rotation of the planes (23), (45), (67) at rates (1, 1, −2).
pub fn rotation_generator() -> VectorField {
    let x = |i| Polynomial::var(7, i).expect("index in range");
    let two = int(2);
    VectorField::new(vec![
        Polynomial::zero(7),
        x(3),
        -x(2),
        x(5),
        -x(4),
        x(7).scale(&-two.clone()),
        x(6).scale(&two),
    ])
    .expect("seven components")
}

/// Linear map `e1 ↦ e1, e2 ↦ e3, e3 ↦ −e2, e4 ↦ e5, e5 ↦ −e4, e6 ↦ −e6,
/// e7 ↦ −e7`: quarter turns in (23), (45) and a half turn in (67).
pub fn integer_rotation() -> PolynomialMap {
    let mut m = RationalMatrix::zeros(7, 7);
    // column j is the image of e_j
    let images: [(usize, usize, i64); 7] = [
        (1, 1, 1),
        (2, 3, 1),
        (3, 2, -1),
        (4, 5, 1),
        (5, 4, -1),
        (6, 6, -1),
        (7, 7, -1),
    ];
    for (j, i, s) in images {
        m[(i - 1, j - 1)] = int(s);
    }
    PolynomialMap::linear(&m).expect("invertible")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi0_coefficients() {
        let p = phi0();
        assert_eq!(p.constant_value(&[1, 2, 3]), int(1));
        assert_eq!(p.constant_value(&[2, 5, 7]), int(-1));
        assert_eq!(p.constant_value(&[1, 2, 4]), int(0));
        assert_eq!(p.num_terms(), 7);
        let g = preset_phi0();
        assert!(g.is_closed() && g.has_constant_coefficients());
    }

    #[test]
    fn star_phi0_coefficients_and_normalization() {
        let s = preset_star_phi0();
        assert_eq!(s.constant_value(&[4, 5, 6, 7]), int(1));
        assert_eq!(s.constant_value(&[1, 2, 4, 7]), int(-1));
        let top = phi0().wedge(&s).unwrap();
        assert_eq!(
            top,
            DifferentialForm::basis(7, &[1, 2, 3, 4, 5, 6, 7])
                .unwrap()
                .scale(&int(7))
        );
    }

    #[test]
    fn cst_is_closed_and_dt_contracts_to_dlambda() {
        let g = preset_cst();
        assert!(g.is_closed());
        let dt = VectorField::coordinate(7, 7).unwrap();
        let contracted = g.phi().interior(&dt).unwrap();
        assert_eq!(
            contracted,
            tautological_one_form().exterior_derivative().unwrap()
        );
    }
}
