use std::collections::BTreeSet;

use super::split::split_two_form;
use super::{contraction_matrix, G2Error, G2Structure};
use crate::algebra::{Monomial, Polynomial, Rational, RationalMatrix, SolveOutcome};
use crate::exterior::{DifferentialForm, MultiIndex, VectorField};

/// Verdict of the G₂-field test, with `d(X⌟φ)` as certificate and the
/// Cartan-formula Lie derivative as cross-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct G2FieldReport {
    pub certificate: DifferentialForm,
    pub lie_derivative: DifferentialForm,
    pub is_g2: bool,
}

/// For closed `φ`, `L_X φ = d(X⌟φ)`, so `X` preserves `φ` iff `X⌟φ` is closed.
pub fn is_g2_vector_field(g2: &G2Structure, field: &VectorField) -> Result<G2FieldReport, G2Error> {
    g2.require_closed()?;
    let certificate = g2.phi().interior(field)?.exterior_derivative()?;
    let lie_derivative = g2.phi().lie_derivative(field)?;
    let is_g2 = certificate.is_zero();
    Ok(G2FieldReport {
        certificate,
        lie_derivative,
        is_g2,
    })
}

fn require_one_form(alpha: &DifferentialForm) -> Result<(), G2Error> {
    if alpha.degree() != 1 {
        return Err(G2Error::WrongDegree {
            expected: 1,
            got: alpha.degree(),
        });
    }
    Ok(())
}

/// Solves `X⌟φ = dα` monomial by monomial. The system is overdetermined
/// (21 equations, 7 unknowns) and must be consistent exactly; the solution
/// is unique because `X ↦ X⌟φ` is injective.
pub fn rochesterian_field_of(
    g2: &G2Structure,
    alpha: &DifferentialForm,
) -> Result<VectorField, G2Error> {
    g2.require_closed()?;
    g2.require_constant()?;
    require_one_form(alpha)?;
    let d_alpha = alpha.exterior_derivative()?;
    let matrix = contraction_matrix(g2.phi());
    let basis = MultiIndex::all(7, 2);
    let monomials: BTreeSet<Monomial> = d_alpha
        .terms()
        .flat_map(|(_, p)| p.terms().map(|(m, _)| m.clone()))
        .collect();
    let mut components = vec![Polynomial::zero(7); 7];
    for m in monomials {
        let rhs: Vec<Rational> = basis
            .iter()
            .map(|idx| {
                d_alpha
                    .coefficient_at(idx)
                    .map_or_else(|| Rational::from_integer(0.into()), |p| p.coefficient(&m))
            })
            .collect();
        match matrix.solve(&rhs) {
            SolveOutcome::Unique(x) => {
                for (c, v) in components.iter_mut().zip(x) {
                    *c = &*c + &Polynomial::monomial(m.clone(), v);
                }
            }
            SolveOutcome::Inconsistent => {
                let residual = split_two_form(g2, &d_alpha)?.omega14;
                return Err(G2Error::NotRochesterian(Box::new(residual)));
            }
            SolveOutcome::Underdetermined(_) => {
                return Err(G2Error::Degenerate {
                    rank: matrix.rank(),
                    at: "origin".into(),
                })
            }
        }
    }
    Ok(VectorField::new(components)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketReport {
    /// `{α, β} = φ(X_α, X_β, ·) = X_β ⌟ (X_α ⌟ φ)`.
    pub bracket: DifferentialForm,
    pub x_alpha: VectorField,
    pub x_beta: VectorField,
    /// `[X_β, X_α]`, the Rochesterian field of the bracket.
    pub bracket_field: VectorField,
    /// `d{α, β} = [X_β, X_α] ⌟ φ` held exactly.
    pub closure_holds: bool,
}

pub fn rochesterian_bracket(
    g2: &G2Structure,
    alpha: &DifferentialForm,
    beta: &DifferentialForm,
) -> Result<BracketReport, G2Error> {
    let x_alpha = rochesterian_field_of(g2, alpha)?;
    let x_beta = rochesterian_field_of(g2, beta)?;
    let bracket = g2.phi().interior(&x_alpha)?.interior(&x_beta)?;
    let bracket_field = x_beta.bracket(&x_alpha)?;
    let closure_holds = bracket.exterior_derivative()? == g2.phi().interior(&bracket_field)?;
    Ok(BracketReport {
        bracket,
        x_alpha,
        x_beta,
        bracket_field,
        closure_holds,
    })
}

fn bracket_form(
    g2: &G2Structure,
    alpha: &DifferentialForm,
    beta: &DifferentialForm,
) -> Result<DifferentialForm, G2Error> {
    Ok(rochesterian_bracket(g2, alpha, beta)?.bracket)
}

/// Both sides of the Jacobi-defect identity
/// `{α,{β,γ}} + {β,{γ,α}} + {γ,{α,β}} = d(dγ(X_α, X_β))`.
///
/// The chain `X_α ⌟ X_β ⌟ dγ` is read left to right, as in the bracket
/// `φ(X_α, X_β, ·)`. The nested contraction `X_α ⌟ (X_β ⌟ dγ)` is
/// `dγ(X_β, X_α)` and gives the opposite sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiDefect {
    pub lhs: DifferentialForm,
    pub rhs: DifferentialForm,
}

impl JacobiDefect {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// The left side re-solves for the Rochesterian field of each inner bracket
/// instead of assuming it, so the identity is checked end to end.
pub fn jacobi_defect(
    g2: &G2Structure,
    alpha: &DifferentialForm,
    beta: &DifferentialForm,
    gamma: &DifferentialForm,
) -> Result<JacobiDefect, G2Error> {
    let bg = bracket_form(g2, beta, gamma)?;
    let ga = bracket_form(g2, gamma, alpha)?;
    let ab = bracket_form(g2, alpha, beta)?;
    let lhs = bracket_form(g2, alpha, &bg)?
        .checked_add(&bracket_form(g2, beta, &ga)?)?
        .checked_add(&bracket_form(g2, gamma, &ab)?)?;
    let x_alpha = rochesterian_field_of(g2, alpha)?;
    let x_beta = rochesterian_field_of(g2, beta)?;
    let rhs = gamma
        .exterior_derivative()?
        .interior(&x_alpha)?
        .interior(&x_beta)?
        .exterior_derivative()?;
    Ok(JacobiDefect { lhs, rhs })
}

/// `{α₁, α₂} ∈ ker Φ` against `L_{X_{α₂}}(dα₁) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowConstancy {
    pub lie_of_dalpha1: DifferentialForm,
    /// `d{α₁, α₂}`, the image of the bracket under `X ↦ X⌟φ` inverted.
    pub bracket_derivative: DifferentialForm,
    pub in_kernel: bool,
}

impl FlowConstancy {
    /// The two criteria vanish together, and in fact agree as forms.
    pub fn consistent(&self) -> bool {
        self.in_kernel == self.lie_of_dalpha1.is_zero()
            && self.lie_of_dalpha1 == self.bracket_derivative
    }
}

pub fn flow_constancy_check(
    g2: &G2Structure,
    alpha1: &DifferentialForm,
    alpha2: &DifferentialForm,
) -> Result<FlowConstancy, G2Error> {
    let report = rochesterian_bracket(g2, alpha1, alpha2)?;
    let bracket_derivative = report.bracket.exterior_derivative()?;
    let in_kernel = rochesterian_field_of(g2, &report.bracket)?.is_zero();
    let lie_of_dalpha1 = alpha1
        .exterior_derivative()?
        .lie_derivative(&report.x_beta)?;
    Ok(FlowConstancy {
        lie_of_dalpha1,
        bracket_derivative,
        in_kernel,
    })
}

/// Basis of the linear fields `x ↦ A x` preserving a constant-coefficient
/// `φ`, found as the null space of `A ↦ L_{Ax} φ` on `gl(7)`. For `φ₀` this
/// is the 14-dimensional Lie algebra of G₂.
pub fn infinitesimal_automorphisms(g2: &G2Structure) -> Result<Vec<VectorField>, G2Error> {
    g2.require_constant()?;
    let triples = MultiIndex::all(7, 3);
    let mut columns = Vec::with_capacity(49);
    let elementary = |i: usize, j: usize| -> Result<VectorField, G2Error> {
        let mut comps = vec![Polynomial::zero(7); 7];
        comps[i] = Polynomial::var(7, j + 1)?;
        Ok(VectorField::new(comps)?)
    };
    for i in 0..7 {
        for j in 0..7 {
            let lie = g2.phi().lie_derivative(&elementary(i, j)?)?;
            columns.push(
                triples
                    .iter()
                    .map(|t| {
                        lie.coefficient_at(t).map_or_else(
                            || Rational::from_integer(0.into()),
                            Polynomial::constant_term,
                        )
                    })
                    .collect::<Vec<_>>(),
            );
        }
    }
    let matrix = RationalMatrix::from_rows(columns).transpose();
    matrix
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut field = VectorField::zero(7);
            for (k, c) in v.iter().enumerate() {
                field = &field + &elementary(k / 7, k % 7)?.scale(c);
            }
            Ok(field)
        })
        .collect()
}
