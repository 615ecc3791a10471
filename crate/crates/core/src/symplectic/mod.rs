//! The symplectic side of the analogy: `(ℝ²ⁿ, ω)` with Hamiltonian fields
//! and the Poisson bracket, computed with the same contraction code as the
//! G₂ module (`{f, g} = ω(X_f, X_g) = X_g ⌟ (X_f ⌟ ω)`).

use thiserror::Error;

use crate::algebra::{AlgebraError, Polynomial, RationalMatrix};
use crate::exterior::{DifferentialForm, ExteriorError, PolynomialMap, VectorField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error("half-dimension must be at least 1")]
    ZeroDimension,
    #[error(
        "expected a 2-form on an even-dimensional chart, got degree {degree} on dimension {dim}"
    )]
    NotATwoForm { degree: usize, dim: usize },
    #[error("symplectic form must have constant coefficients")]
    NonConstant,
    #[error("2-form is degenerate: coefficient matrix has rank {rank}")]
    Degenerate { rank: usize },
}

impl From<AlgebraError> for SymplecticError {
    fn from(e: AlgebraError) -> Self {
        SymplecticError::Exterior(e.into())
    }
}

/// A constant-coefficient symplectic form on `ℝ²ⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticStructure {
    n: usize,
    omega: DifferentialForm,
    /// `Ω_ij = ω(e_i, e_j)`.
    matrix: RationalMatrix,
    /// Solves `X ⌟ ω = dH`: `X = solver · ∇H`.
    solver: RationalMatrix,
}

impl SymplecticStructure {
    /// Constant coefficients make `dω = 0` automatic; nondegeneracy is
    /// checked on the coefficient matrix.
    pub fn new(omega: DifferentialForm) -> Result<Self, SymplecticError> {
        let dim = omega.dim();
        if omega.degree() != 2 || !dim.is_multiple_of(2) || dim == 0 {
            return Err(SymplecticError::NotATwoForm {
                degree: omega.degree(),
                dim,
            });
        }
        if !omega.has_constant_coefficients() {
            return Err(SymplecticError::NonConstant);
        }
        let mut matrix = RationalMatrix::zeros(dim, dim);
        for (idx, c) in omega.terms() {
            let v = idx.to_vec();
            let (i, j) = (v[0] - 1, v[1] - 1);
            matrix[(i, j)] = c.constant_term();
            matrix[(j, i)] = -c.constant_term();
        }
        // (X ⌟ ω)_j = Σ_i X^i Ω_ij, so X = (Ωᵀ)⁻¹ ∇H
        let solver = matrix
            .transpose()
            .inverse()
            .ok_or(SymplecticError::Degenerate {
                rank: matrix.rank(),
            })?;
        Ok(SymplecticStructure {
            n: dim / 2,
            omega,
            matrix,
            solver,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn omega(&self) -> &DifferentialForm {
        &self.omega
    }

    pub fn coefficient_matrix(&self) -> &RationalMatrix {
        &self.matrix
    }
}

/// `ω = Σ dxⁱ∧dx^{n+i}` on `x₁..x₂ₙ`.
pub fn preset_omega_std(n: usize) -> Result<SymplecticStructure, SymplecticError> {
    if n == 0 {
        return Err(SymplecticError::ZeroDimension);
    }
    let mut omega = DifferentialForm::zero(2 * n, 2)?;
    for i in 1..=n {
        omega = omega.checked_add(&DifferentialForm::basis(2 * n, &[i, n + i])?)?;
    }
    SymplecticStructure::new(omega)
}

fn check_dim(s: &SymplecticStructure, dim: usize) -> Result<(), SymplecticError> {
    if dim == s.dim() {
        Ok(())
    } else {
        Err(ExteriorError::DimensionMismatch {
            left: s.dim(),
            right: dim,
        }
        .into())
    }
}

/// The unique `X_H` with `X_H ⌟ ω = dH`.
pub fn hamiltonian_field(
    s: &SymplecticStructure,
    h: &Polynomial,
) -> Result<VectorField, SymplecticError> {
    check_dim(s, h.dim())?;
    let dim = s.dim();
    let gradient: Vec<Polynomial> = (1..=dim).map(|j| h.partial(j)).collect::<Result<_, _>>()?;
    let components = (0..dim)
        .map(|i| {
            gradient
                .iter()
                .enumerate()
                .try_fold(Polynomial::zero(dim), |acc, (j, g)| {
                    acc.checked_add(&g.scale(&s.solver[(i, j)]))
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VectorField::new(components)?)
}

/// `{f, g} = ω(X_f, X_g)`.
pub fn poisson_bracket(
    s: &SymplecticStructure,
    f: &Polynomial,
    g: &Polynomial,
) -> Result<Polynomial, SymplecticError> {
    let xf = hamiltonian_field(s, f)?;
    let xg = hamiltonian_field(s, g)?;
    Ok(VectorField::evaluate_form(&s.omega, &[&xf, &xg])?)
}

/// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}`, identically zero.
pub fn poisson_jacobi_check(
    s: &SymplecticStructure,
    f: &Polynomial,
    g: &Polynomial,
    h: &Polynomial,
) -> Result<Polynomial, SymplecticError> {
    let a = poisson_bracket(s, f, &poisson_bracket(s, g, h)?)?;
    let b = poisson_bracket(s, g, &poisson_bracket(s, h, f)?)?;
    let c = poisson_bracket(s, h, &poisson_bracket(s, f, g)?)?;
    Ok(a.checked_add(&b)?.checked_add(&c)?)
}

/// `X_{{f,g}} + [X_f, X_g]`, which vanishes exactly.
pub fn anti_homomorphism_defect(
    s: &SymplecticStructure,
    f: &Polynomial,
    g: &Polynomial,
) -> Result<VectorField, SymplecticError> {
    let bracket_field = hamiltonian_field(s, &poisson_bracket(s, f, g)?)?;
    let lie = hamiltonian_field(s, f)?.bracket(&hamiltonian_field(s, g)?)?;
    Ok(bracket_field.checked_add(&lie)?)
}

/// Both sides of `[X₁, X₂] ⌟ ω = d(ω(X₂, X₁))` for symplectic `X₁, X₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketContraction {
    pub lhs: DifferentialForm,
    pub rhs: DifferentialForm,
}

impl BracketContraction {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn bracket_contraction(
    s: &SymplecticStructure,
    x1: &VectorField,
    x2: &VectorField,
) -> Result<BracketContraction, SymplecticError> {
    let lhs = s.omega.interior(&x1.bracket(x2)?)?;
    let rhs = DifferentialForm::function(VectorField::evaluate_form(&s.omega, &[x2, x1])?)
        .exterior_derivative()?;
    Ok(BracketContraction { lhs, rhs })
}

/// `d(X ⌟ ω) = 0`.
pub fn is_symplectic_field(
    s: &SymplecticStructure,
    x: &VectorField,
) -> Result<bool, SymplecticError> {
    Ok(s.omega.interior(x)?.is_closed()?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonPullback {
    /// `{f, g} ∘ ψ` (bracket on the target).
    pub lhs: Polynomial,
    /// `{f ∘ ψ, g ∘ ψ}` (bracket on the source).
    pub rhs: Polynomial,
    /// `ψ*ω_dst − ω_src`.
    pub form_defect: DifferentialForm,
    pub equal: bool,
}

impl PoissonPullback {
    pub fn difference(&self) -> Polynomial {
        &self.lhs - &self.rhs
    }
}

pub fn symplectomorphism_bracket_check(
    src: &SymplecticStructure,
    dst: &SymplecticStructure,
    map: &PolynomialMap,
    f: &Polynomial,
    g: &Polynomial,
) -> Result<PoissonPullback, SymplecticError> {
    if map.inverse().is_none() {
        return Err(ExteriorError::MissingInverse.into());
    }
    check_dim(src, map.source_dim())?;
    check_dim(dst, map.target_dim())?;
    let lhs = map.apply_to(&poisson_bracket(dst, f, g)?)?;
    let rhs = poisson_bracket(src, &map.apply_to(f)?, &map.apply_to(g)?)?;
    let form_defect = map.pullback(&dst.omega)?.checked_sub(&src.omega)?;
    Ok(PoissonPullback {
        equal: lhs == rhs,
        lhs,
        rhs,
        form_defect,
    })
}
