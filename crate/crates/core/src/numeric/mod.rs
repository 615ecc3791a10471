//! Floating-point cross-checks for the exact engine: multilinear evaluation,
//! a finite-difference exterior derivative, and fixed-step RK4 flows with
//! the Jacobian carried along by the variational equation.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{rational_to_f64, AlgebraError, Polynomial, Rational, RationalMatrix};
use crate::exterior::{DifferentialForm, ExteriorError, MultiIndex, VectorField};
use crate::g2::{rochesterian_field_of, G2Error, G2Structure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    G2(#[from] G2Error),
    #[error("form of degree {degree} needs {degree} vectors, got {got}")]
    Arity { degree: usize, got: usize },
    #[error("vector has {got} components, chart has dimension {dim}")]
    VectorLength { dim: usize, got: usize },
    #[error("step must be positive and finite")]
    BadStep,
}

impl From<AlgebraError> for NumericError {
    fn from(e: AlgebraError) -> Self {
        NumericError::Exterior(e.into())
    }
}

/// Every tolerance used by the numeric checks.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericConfig {
    pub fd_step: f64,
    /// Finite-difference agreement with the symbolic derivative.
    pub fd_tolerance: f64,
    /// Sampled agreement of exact identities.
    pub sample_tolerance: f64,
    /// Pullback drift of a translation flow.
    pub translation_drift: f64,
    /// Pullback drift of a G₂ field at `t = 1` with 1000 steps.
    pub g2_drift: f64,
    /// Flow-constancy deviation for a pair in the kernel.
    pub kernel_drift: f64,
    /// Deviation above which a pair is reported outside the kernel.
    pub non_kernel_drift: f64,
    /// Accepted range of `drift(N) / drift(2N)` for a fourth-order method.
    pub order_ratio: (f64, f64),
    pub steps: usize,
    pub t_end: f64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            fd_step: 1e-4,
            fd_tolerance: 1e-6,
            sample_tolerance: 1e-10,
            translation_drift: 1e-12,
            g2_drift: 1e-8,
            kernel_drift: 1e-6,
            non_kernel_drift: 1e-3,
            order_ratio: (8.0, 32.0),
            steps: 1000,
            t_end: 1.0,
        }
    }
}

pub const DEFAULT_SEED: u64 = 0x6732_6361_6c63;

/// Seed from `G2CALC_SEED` when set and parseable, else [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var("G2CALC_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` points in `[-1, 1]^dim`.
pub fn random_points(rng: &mut impl Rng, dim: usize, count: usize) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect())
        .collect()
}

fn check_vectors<T>(form: &DifferentialForm, vectors: &[Vec<T>]) -> Result<(), NumericError> {
    if vectors.len() != form.degree() {
        return Err(NumericError::Arity {
            degree: form.degree(),
            got: vectors.len(),
        });
    }
    if let Some(v) = vectors.iter().find(|v| v.len() != form.dim()) {
        return Err(NumericError::VectorLength {
            dim: form.dim(),
            got: v.len(),
        });
    }
    Ok(())
}

/// `a_p(v_1, ..., v_k) = Σ_I a_I(p) det[v_b^{i_a}]`.
pub fn eval_form(
    form: &DifferentialForm,
    point: &[f64],
    vectors: &[Vec<f64>],
) -> Result<f64, NumericError> {
    check_vectors(form, vectors)?;
    let k = form.degree();
    let mut total = 0.0;
    for (idx, c) in form.terms() {
        let rows = idx.to_vec();
        let det = if k == 0 {
            1.0
        } else {
            DMatrix::from_fn(k, k, |a, b| vectors[b][rows[a] - 1]).determinant()
        };
        total += c.eval_f64(point)? * det;
    }
    Ok(total)
}

pub fn eval_form_exact(
    form: &DifferentialForm,
    point: &[Rational],
    vectors: &[Vec<Rational>],
) -> Result<Rational, NumericError> {
    check_vectors(form, vectors)?;
    let mut total = Rational::from_integer(0.into());
    for (idx, c) in form.terms() {
        let rows = idx.to_vec();
        let m = RationalMatrix::from_rows(
            rows.iter()
                .map(|&i| vectors.iter().map(|v| v[i - 1].clone()).collect())
                .collect(),
        );
        let det = if rows.is_empty() {
            Rational::from_integer(1.into())
        } else {
            m.determinant()
        };
        total += c.eval_exact(point)? * det;
    }
    Ok(total)
}

/// Central-difference estimate of the coefficients of `da` at `point`:
/// `(da)_J = Σ_p (−1)^p ∂_{j_p} a_{J∖j_p}`. Uses only pointwise evaluation
/// of the coefficients of `a`, never the symbolic derivative.
pub fn finite_difference_d(
    form: &DifferentialForm,
    point: &[f64],
    h: f64,
) -> Result<BTreeMap<MultiIndex, f64>, NumericError> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(NumericError::BadStep);
    }
    let dim = form.dim();
    if point.len() != dim {
        return Err(NumericError::VectorLength {
            dim,
            got: point.len(),
        });
    }
    let k = form.degree();
    if k >= dim {
        return Err(ExteriorError::DegreeOverflow { degree: k + 1, dim }.into());
    }
    let mut partials = vec![BTreeMap::new(); dim];
    for (i, slot) in partials.iter_mut().enumerate() {
        let mut plus = point.to_vec();
        let mut minus = point.to_vec();
        plus[i] += h;
        minus[i] -= h;
        let (fp, fm) = (
            form.coefficients_f64(&plus)?,
            form.coefficients_f64(&minus)?,
        );
        for (idx, vp) in fp {
            let vm = fm.get(&idx).copied().unwrap_or(0.0);
            slot.insert(idx, (vp - vm) / (2.0 * h));
        }
    }
    let mut out = BTreeMap::new();
    for j in MultiIndex::all(dim, k + 1) {
        let js = j.to_vec();
        let mut v = 0.0;
        for (p, &jp) in js.iter().enumerate() {
            let rest: Vec<usize> = js.iter().copied().filter(|&x| x != jp).collect();
            let rest = MultiIndex::new(&rest)?;
            let d = partials[jp - 1].get(&rest).copied().unwrap_or(0.0);
            v += if p % 2 == 0 { d } else { -d };
        }
        out.insert(j, v);
    }
    Ok(out)
}

/// Largest deviation between symbolic `da` and [`finite_difference_d`].
pub fn fd_discrepancy(form: &DifferentialForm, point: &[f64], h: f64) -> Result<f64, NumericError> {
    let symbolic = form.exterior_derivative()?.coefficients_f64(point)?;
    let numeric = finite_difference_d(form, point, h)?;
    Ok(numeric
        .iter()
        .map(|(idx, v)| (v - symbolic.get(idx).copied().unwrap_or(0.0)).abs())
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowResult {
    pub trajectory: Vec<(f64, Vec<f64>)>,
    /// Per step, `max |(ψ_t* a)_{x₀}(e_I) − a_{x₀}(e_I)|` over basis tuples.
    pub pullback_drift: Vec<f64>,
    /// Jacobian of the flow map at the final time.
    pub jacobian: Vec<Vec<f64>>,
    /// Time at which the state stopped being finite, if it did.
    pub blow_up: Option<f64>,
}

impl FlowResult {
    pub fn max_drift(&self) -> f64 {
        self.pullback_drift.iter().copied().fold(0.0, f64::max)
    }

    pub fn final_drift(&self) -> f64 {
        self.pullback_drift.last().copied().unwrap_or(0.0)
    }

    pub fn end_point(&self) -> &[f64] {
        &self
            .trajectory
            .last()
            .expect("trajectory starts with the initial point")
            .1
    }
}

/// `X` and its Jacobian `∂_j X^i` evaluated in floating point.
struct Linearized {
    components: Vec<Polynomial>,
    jacobian: Vec<Vec<Polynomial>>,
}

impl Linearized {
    fn new(field: &VectorField) -> Result<Self, NumericError> {
        let dim = field.dim();
        let jacobian = field
            .components()
            .iter()
            .map(|c| {
                (1..=dim)
                    .map(|j| c.partial(j))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Linearized {
            components: field.components().to_vec(),
            jacobian,
        })
    }

    /// Right-hand side of `ẋ = X(x)`, `J̇ = DX(x) J`; the state is `x`
    /// followed by `J` in row-major order.
    fn rhs(&self, state: &[f64]) -> Vec<f64> {
        let n = self.components.len();
        let x = &state[..n];
        let mut out = Vec::with_capacity(state.len());
        for c in &self.components {
            out.push(c.eval_f64(x).expect("dimension checked"));
        }
        let dx: Vec<Vec<f64>> = self
            .jacobian
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| p.eval_f64(x).expect("dimension checked"))
                    .collect()
            })
            .collect();
        for row in &dx {
            for j in 0..n {
                out.push((0..n).map(|k| row[k] * state[n + k * n + j]).sum());
            }
        }
        out
    }
}

fn rk4_step(sys: &Linearized, state: &[f64], h: f64) -> Vec<f64> {
    let shifted = |base: &[f64], k: &[f64], c: f64| -> Vec<f64> {
        base.iter().zip(k).map(|(a, b)| a + c * b).collect()
    };
    let k1 = sys.rhs(state);
    let k2 = sys.rhs(&shifted(state, &k1, h / 2.0));
    let k3 = sys.rhs(&shifted(state, &k2, h / 2.0));
    let k4 = sys.rhs(&shifted(state, &k3, h));
    (0..state.len())
        .map(|i| state[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect()
}

/// Values `a_x(J e_{i_1}, ..., J e_{i_k})` on all basis tuples `i_1 < ... < i_k`.
fn pulled_back_values(
    form: &DifferentialForm,
    x: &[f64],
    jac: &[f64],
) -> Result<Vec<f64>, NumericError> {
    let n = form.dim();
    MultiIndex::all(n, form.degree())
        .iter()
        .map(|idx| {
            let vectors: Vec<Vec<f64>> = idx
                .indices()
                .map(|j| (0..n).map(|i| jac[i * n + j - 1]).collect())
                .collect();
            eval_form(form, x, &vectors)
        })
        .collect()
}

/// Integrates the flow of `field` from `start` with fixed-step RK4 and
/// tracks how far `ψ_t* form` drifts from `form` at the start point.
pub fn integrate_flow(
    field: &VectorField,
    form: &DifferentialForm,
    start: &[f64],
    t_end: f64,
    steps: usize,
) -> Result<FlowResult, NumericError> {
    let n = field.dim();
    if form.dim() != n {
        return Err(ExteriorError::DimensionMismatch {
            left: n,
            right: form.dim(),
        }
        .into());
    }
    if start.len() != n {
        return Err(NumericError::VectorLength {
            dim: n,
            got: start.len(),
        });
    }
    if steps == 0 || !t_end.is_finite() {
        return Err(NumericError::BadStep);
    }
    let sys = Linearized::new(field)?;
    let mut state = start.to_vec();
    for i in 0..n {
        for j in 0..n {
            state.push(if i == j { 1.0 } else { 0.0 });
        }
    }
    let reference = pulled_back_values(form, start, &state[n..])?;
    let h = t_end / steps as f64;
    let mut trajectory = vec![(0.0, start.to_vec())];
    let mut pullback_drift = vec![0.0];
    let mut blow_up = None;
    for s in 1..=steps {
        let next = rk4_step(&sys, &state, h);
        let t = s as f64 * h;
        if next.iter().any(|v| !v.is_finite()) {
            blow_up = Some(t);
            break;
        }
        state = next;
        let values = pulled_back_values(form, &state[..n], &state[n..])?;
        let drift = values
            .iter()
            .zip(&reference)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        trajectory.push((t, state[..n].to_vec()));
        pullback_drift.push(drift);
    }
    let jacobian = (0..n)
        .map(|i| state[n + i * n..n + (i + 1) * n].to_vec())
        .collect();
    Ok(FlowResult {
        trajectory,
        pullback_drift,
        jacobian,
        blow_up,
    })
}

/// Largest deviation of `dα₁`, transported by the flow of `X_{α₂}`, from
/// its value at `start`.
pub fn flow_constancy_sample(
    g2: &G2Structure,
    alpha1: &DifferentialForm,
    alpha2: &DifferentialForm,
    start: &[f64],
    t_end: f64,
    steps: usize,
) -> Result<f64, NumericError> {
    let transport = rochesterian_field_of(g2, alpha2)?;
    rochesterian_field_of(g2, alpha1)?;
    let da1 = alpha1.exterior_derivative()?;
    Ok(integrate_flow(&transport, &da1, start, t_end, steps)?.max_drift())
}

/// `drift(N) / drift(2N)` at `t_end`; about 16 for a fourth-order scheme
/// applied to a field that preserves `form` exactly.
pub fn rk4_order_ratio(
    field: &VectorField,
    form: &DifferentialForm,
    start: &[f64],
    t_end: f64,
    coarse_steps: usize,
) -> Result<f64, NumericError> {
    let coarse = integrate_flow(field, form, start, t_end, coarse_steps)?.final_drift();
    let fine = integrate_flow(field, form, start, t_end, 2 * coarse_steps)?.final_drift();
    Ok(coarse / fine)
}

/// Largest coefficient of `form` over the given points, in floating point.
pub fn max_abs_sampled(form: &DifferentialForm, points: &[Vec<f64>]) -> Result<f64, NumericError> {
    let mut worst: f64 = 0.0;
    for p in points {
        for v in form.coefficients_f64(p)?.values() {
            worst = worst.max(v.abs());
        }
    }
    Ok(worst)
}

pub fn rational_vector_to_f64(v: &[Rational]) -> Vec<f64> {
    v.iter().map(rational_to_f64).collect()
}
