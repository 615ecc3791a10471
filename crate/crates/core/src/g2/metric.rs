use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_traits::{One, Signed, Zero};

use super::{G2Error, G2Structure};
use crate::algebra::{
    int, rational_from_f64, rational_to_f64, Polynomial, Rational, RationalMatrix, SolveOutcome,
};
use crate::exterior::{DifferentialForm, MultiIndex, VectorField};

/// Metric recovered from `φ` at a point.
#[derive(Debug, Clone)]
pub struct MetricReport {
    pub gram: Vec<Vec<f64>>,
    /// Exact Gram matrix, available when `det g = 1` (e.g. for `φ₀`).
    pub exact_gram: Option<RationalMatrix>,
    /// `B̃_ij`: top coefficient of `(e_i⌟φ)∧(e_j⌟φ)∧φ`, equal to `6 g_ij √det g`.
    pub b_tilde: RationalMatrix,
    /// Coefficient of the volume form, `√det g`.
    pub volume_coefficient: f64,
    pub pointwise_at: Vec<f64>,
}

impl MetricReport {
    pub fn is_identity(&self) -> bool {
        self.exact_gram
            .as_ref()
            .is_some_and(|g| *g == RationalMatrix::identity(7))
    }

    /// `6 √det g`, the factor relating `B̃` to `g`.
    fn scale(&self) -> f64 {
        6.0 * self.volume_coefficient
    }
}

fn to_rational_point(point: &[f64]) -> Result<Vec<Rational>, G2Error> {
    if point.len() != 7 {
        return Err(crate::exterior::ExteriorError::DimensionMismatch {
            left: 7,
            right: point.len(),
        }
        .into());
    }
    point.iter().map(|&x| Ok(rational_from_f64(x)?)).collect()
}

/// `B̃` for a constant (already evaluated) 3-form.
fn b_tilde(phi: &DifferentialForm) -> Result<RationalMatrix, G2Error> {
    let contractions: Vec<DifferentialForm> = (1..=7)
        .map(|i| phi.interior(&VectorField::coordinate(7, i)?))
        .collect::<Result<_, _>>()?;
    let mut b = RationalMatrix::zeros(7, 7);
    for i in 0..7 {
        let left = contractions[i].wedge(phi)?;
        for j in i..7 {
            let top = contractions[j].wedge(&left)?;
            let v = top.constant_value(&[1, 2, 3, 4, 5, 6, 7]);
            b[(i, j)] = v.clone();
            b[(j, i)] = v;
        }
    }
    Ok(b)
}

/// Recovers `g_φ` and `vol_φ` at `point` from
/// `(X⌟φ)∧(Y⌟φ)∧φ = 6⟨X,Y⟩ vol`.
///
/// With `B̃ = 6 g √det g` one gets `det g = (det B̃ / 6⁷)^{2/9}`. When
/// `det B̃ = 6⁷` the Gram matrix `B̃/6` is reported exactly.
pub fn metric_from_phi(g2: &G2Structure, point: &[f64]) -> Result<MetricReport, G2Error> {
    let q = to_rational_point(point)?;
    let phi = g2.phi().at_point(&q)?;
    let b = b_tilde(&phi)?;
    // positive definiteness of B̃ via leading principal minors, exactly
    for k in 1..=7 {
        let minor = RationalMatrix::from_rows(
            (0..k)
                .map(|i| (0..k).map(|j| b[(i, j)].clone()).collect())
                .collect(),
        );
        let det = minor.determinant();
        if !det.is_positive() {
            return Err(G2Error::NotPositive {
                det: det.to_string(),
            });
        }
    }
    let det_b = b.determinant();
    let six7 = num_traits::pow(int(6), 7);
    let (gram, exact_gram, volume) = if det_b == six7 {
        let six_inv = Rational::new(1.into(), 6.into());
        let mut exact = b.clone();
        for i in 0..7 {
            for j in 0..7 {
                exact[(i, j)] = &b[(i, j)] * &six_inv;
            }
        }
        let gram = (0..7)
            .map(|i| (0..7).map(|j| rational_to_f64(&exact[(i, j)])).collect())
            .collect();
        (gram, Some(exact), 1.0)
    } else {
        let det_g = rational_to_f64(&(&det_b / &six7)).powf(2.0 / 9.0);
        let sqrt_det = det_g.sqrt();
        let gram = (0..7)
            .map(|i| {
                (0..7)
                    .map(|j| rational_to_f64(&b[(i, j)]) / (6.0 * sqrt_det))
                    .collect()
            })
            .collect();
        (gram, None, sqrt_det)
    };
    Ok(MetricReport {
        gram,
        exact_gram,
        b_tilde: b,
        volume_coefficient: volume,
        pointwise_at: point.to_vec(),
    })
}

/// `X × Y` at a point, from `⟨X×Y, Z⟩ = φ(X, Y, Z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossProduct {
    pub values: Vec<f64>,
    /// Exact components when the metric is exact at the point.
    pub exact: Option<Vec<Rational>>,
}

pub fn cross_product(
    g2: &G2Structure,
    x: &VectorField,
    y: &VectorField,
    point: &[f64],
) -> Result<CrossProduct, G2Error> {
    let metric = metric_from_phi(g2, point)?;
    let q = to_rational_point(point)?;
    let pairing = g2.phi().interior(x)?.interior(y)?;
    let rhs: Vec<Rational> = (1..=7)
        .map(|k| Ok(pairing.coefficient(&[k]).eval_exact(&q)?))
        .collect::<Result<_, G2Error>>()?;
    if let Some(g) = &metric.exact_gram {
        let SolveOutcome::Unique(w) = g.solve(&rhs) else {
            unreachable!("positive definite Gram matrix is invertible");
        };
        let values = w.iter().map(rational_to_f64).collect();
        return Ok(CrossProduct {
            values,
            exact: Some(w),
        });
    }
    // g = B̃ / s, so g w = v  ⇔  w = s B̃⁻¹ v
    let SolveOutcome::Unique(w) = metric.b_tilde.solve(&rhs) else {
        unreachable!("positive definite B̃ is invertible");
    };
    let s = metric.scale();
    Ok(CrossProduct {
        values: w.iter().map(|v| s * rational_to_f64(v)).collect(),
        exact: None,
    })
}

/// The cross product as a polynomial vector field, for constant-coefficient
/// structures whose metric is exact (`det g = 1`).
pub fn cross_product_field(
    g2: &G2Structure,
    x: &VectorField,
    y: &VectorField,
) -> Result<VectorField, G2Error> {
    g2.require_constant()?;
    let metric = metric_from_phi(g2, &[0.0; 7])?;
    let gram = metric.exact_gram.ok_or(G2Error::NonConstant)?;
    let inverse = gram.inverse().expect("positive definite");
    let pairing = g2.phi().interior(x)?.interior(y)?;
    let coeffs: Vec<Polynomial> = (1..=7).map(|k| pairing.coefficient(&[k])).collect();
    let components = (0..7)
        .map(|i| {
            coeffs
                .iter()
                .enumerate()
                .fold(Polynomial::zero(7), |acc, (k, c)| {
                    &acc + &c.scale(&inverse[(i, k)])
                })
        })
        .collect();
    Ok(VectorField::new(components)?)
}

/// Result of the Hodge star: exact with polynomial coefficients when the
/// metric is constant and exact, otherwise numeric coefficients at the point.
#[derive(Debug, Clone, PartialEq)]
pub enum HodgeStar {
    Exact(DifferentialForm),
    Numeric {
        degree: usize,
        coefficients: BTreeMap<MultiIndex, f64>,
    },
}

impl HodgeStar {
    pub fn exact(&self) -> Option<&DifferentialForm> {
        match self {
            HodgeStar::Exact(f) => Some(f),
            HodgeStar::Numeric { .. } => None,
        }
    }

    /// Coefficient of `dx^I` (evaluated at the point for the exact variant).
    pub fn value(&self, index: &MultiIndex, point: &[f64]) -> f64 {
        match self {
            HodgeStar::Exact(f) => f
                .coefficient_at(index)
                .map_or(0.0, |p| p.eval_f64(point).unwrap_or(f64::NAN)),
            HodgeStar::Numeric { coefficients, .. } => {
                coefficients.get(index).copied().unwrap_or(0.0)
            }
        }
    }
}

fn minor_rational(m: &RationalMatrix, rows: &MultiIndex, cols: &MultiIndex) -> Rational {
    if rows.is_empty() {
        return Rational::one();
    }
    RationalMatrix::from_rows(
        rows.indices()
            .map(|r| cols.indices().map(|c| m[(r - 1, c - 1)].clone()).collect())
            .collect(),
    )
    .determinant()
}

fn minor_f64(m: &DMatrix<f64>, rows: &MultiIndex, cols: &MultiIndex) -> f64 {
    if rows.is_empty() {
        return 1.0;
    }
    let k = rows.len();
    let sub = DMatrix::from_fn(k, k, |a, b| m[(rows.to_vec()[a] - 1, cols.to_vec()[b] - 1)]);
    sub.determinant()
}

/// `★a` for the metric and orientation recovered from `φ`:
/// `★dx^I = √det g Σ_K g^{IK} ε(K, Kᶜ) dx^{Kᶜ}`, with `g^{IK}` the `I×K`
/// minor of the inverse metric.
pub fn hodge_star(
    g2: &G2Structure,
    form: &DifferentialForm,
    point: &[f64],
) -> Result<HodgeStar, G2Error> {
    if form.dim() != 7 {
        return Err(crate::exterior::ExteriorError::DimensionMismatch {
            left: 7,
            right: form.dim(),
        }
        .into());
    }
    let metric = metric_from_phi(g2, point)?;
    let k = form.degree();
    let targets = MultiIndex::all(7, k);
    if let (Some(gram), true) = (&metric.exact_gram, g2.has_constant_coefficients()) {
        let inv = gram.inverse().expect("positive definite");
        let mut out = DifferentialForm::zero(7, 7 - k)?;
        for (idx, coeff) in form.terms() {
            for target in &targets {
                let m = minor_rational(&inv, idx, target);
                if m.is_zero() {
                    continue;
                }
                let (sign, rest) = target.complement(7);
                let c = coeff.scale(&if sign < 0 { -m } else { m });
                out = out.checked_add(&DifferentialForm::term(c, &rest.to_vec())?)?;
            }
        }
        return Ok(HodgeStar::Exact(out));
    }
    let g = DMatrix::from_fn(7, 7, |i, j| metric.gram[i][j]);
    let inv = g
        .try_inverse()
        .ok_or(G2Error::NotPositive { det: "0".into() })?;
    let values = form.coefficients_f64(point)?;
    let mut coefficients: BTreeMap<MultiIndex, f64> = BTreeMap::new();
    for (idx, v) in &values {
        for target in &targets {
            let (sign, rest) = target.complement(7);
            let contribution =
                metric.volume_coefficient * v * minor_f64(&inv, idx, target) * f64::from(sign);
            *coefficients.entry(rest).or_insert(0.0) += contribution;
        }
    }
    coefficients.retain(|_, v| *v != 0.0);
    Ok(HodgeStar::Numeric {
        degree: 7 - k,
        coefficients,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::g2::{preset_phi0, preset_star_phi0};

    #[test]
    fn phi0_metric_is_exactly_the_identity() {
        let m = metric_from_phi(&preset_phi0(), &[0.3, -1.0, 2.0, 0.0, 5.5, -0.25, 1.0]).unwrap();
        assert!(m.is_identity());
        assert_eq!(m.volume_coefficient, 1.0);
        assert_eq!(m.b_tilde, {
            let mut six = RationalMatrix::identity(7);
            for i in 0..7 {
                six[(i, i)] = int(6);
            }
            six
        });
    }

    #[test]
    fn scaled_phi0_metric() {
        let g = preset_phi0().scaled(&rat(3, 2)).unwrap();
        let m = metric_from_phi(&g, &[0.0; 7]).unwrap();
        let expected = 1.5f64.powf(2.0 / 3.0);
        for i in 0..7 {
            for j in 0..7 {
                let e = if i == j { expected } else { 0.0 };
                assert!((m.gram[i][j] - e).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn negative_multiple_is_rejected() {
        let g = preset_phi0().scaled(&int(-1)).unwrap();
        assert!(matches!(
            metric_from_phi(&g, &[0.0; 7]),
            Err(G2Error::NotPositive { .. })
        ));
    }

    #[test]
    fn cross_product_examples() {
        let g = preset_phi0();
        let e = |i| VectorField::coordinate(7, i).unwrap();
        let c = cross_product(&g, &e(1), &e(2), &[0.0; 7]).unwrap();
        assert_eq!(
            c.exact.unwrap(),
            (1..=7)
                .map(|k| int(if k == 3 { 1 } else { 0 }))
                .collect::<Vec<_>>()
        );
        let c = cross_product(&g, &e(2), &e(5), &[0.0; 7]).unwrap();
        assert_eq!(c.values, vec![0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0]);
        assert!(cross_product_field(&g, &e(4), &e(4)).unwrap().is_zero());
    }

    #[test]
    fn star_of_dx1_and_phi0() {
        let g = preset_phi0();
        let star = hodge_star(&g, &DifferentialForm::basis(7, &[1]).unwrap(), &[0.0; 7]).unwrap();
        assert_eq!(
            star.exact().unwrap(),
            &DifferentialForm::basis(7, &[2, 3, 4, 5, 6, 7]).unwrap()
        );
        let star = hodge_star(&g, g.phi(), &[0.0; 7]).unwrap();
        assert_eq!(star.exact().unwrap(), &preset_star_phi0());
    }

    #[test]
    fn numeric_star_of_scaled_structure() {
        // g = λ I with λ = c^{2/3}: ★ on 3-forms scales by λ^{7/2 - 3} = λ^{1/2}
        let c = rat(3, 2);
        let g = preset_phi0().scaled(&c).unwrap();
        let star = hodge_star(
            &g,
            &DifferentialForm::basis(7, &[1, 2, 3]).unwrap(),
            &[0.0; 7],
        )
        .unwrap();
        let lambda = 1.5f64.powf(2.0 / 3.0);
        let idx = MultiIndex::new(&[4, 5, 6, 7]).unwrap();
        assert!((star.value(&idx, &[0.0; 7]) - lambda.sqrt()).abs() < 1e-12);
    }
}
