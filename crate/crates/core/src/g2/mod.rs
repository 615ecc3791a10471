//! G₂-structures on seven-dimensional polynomial charts.
//!
//! Everything here is built on the exterior engine: the metric is recovered
//! from the 3-form through `(X⌟φ)∧(Y⌟φ)∧φ = 6⟨X,Y⟩ vol`, the cross product
//! and Hodge star follow from the metric, and the Rochesterian machinery
//! solves `X⌟φ = dα` exactly, coefficient by coefficient.

mod bracket;
mod metric;
mod morphism;
mod presets;
mod split;

pub use bracket::{
    flow_constancy_check, infinitesimal_automorphisms, is_g2_vector_field, jacobi_defect,
    rochesterian_bracket, rochesterian_field_of, BracketReport, FlowConstancy, G2FieldReport,
    JacobiDefect,
};
pub use metric::{
    cross_product, cross_product_field, hodge_star, metric_from_phi, CrossProduct, HodgeStar,
    MetricReport,
};
pub use morphism::{
    bracket_pullback_check, graph_criterion, is_g2_morphism, BracketPullback, GraphReport,
    MorphismReport,
};
pub use presets::{
    integer_rotation, phi0, preset_cst, preset_phi0, preset_star_phi0, rotation_generator,
    tautological_one_form,
};
pub use split::{split_dimensions, split_two_form, TwoFormSplit};

use thiserror::Error;

use crate::algebra::{int, rat, AlgebraError, Rational, RationalMatrix};
use crate::exterior::{DifferentialForm, ExteriorError, MultiIndex, VectorField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum G2Error {
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error("expected a 3-form on a 7-dimensional chart, got degree {degree} on dimension {dim}")]
    NotAThreeForm { degree: usize, dim: usize },
    #[error("3-form is degenerate: contraction map has rank {rank} at {at}")]
    Degenerate { rank: usize, at: String },
    #[error("operation requires a closed G2-structure")]
    NotClosed,
    #[error("operation requires a constant-coefficient G2-structure")]
    NonConstant,
    #[error("not Rochesterian: the Ω²₁₄ part of dα is {0}")]
    NotRochesterian(Box<DifferentialForm>),
    #[error("recovered bilinear form is not positive definite (det = {det})")]
    NotPositive { det: String },
    #[error("expected a {expected}-form, got degree {got}")]
    WrongDegree { expected: usize, got: usize },
}

impl From<AlgebraError> for G2Error {
    fn from(e: AlgebraError) -> Self {
        G2Error::Exterior(e.into())
    }
}

/// A 3-form on a 7-chart that is pointwise linearly equivalent to the
/// model form, i.e. `X ↦ X⌟φ` is injective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct G2Structure {
    name: String,
    phi: DifferentialForm,
    is_closed: bool,
    constant_coefficients: bool,
}

/// Rational sample points used for the nondegeneracy check of
/// non-constant forms (the origin is always checked as well).
fn sample_points() -> Vec<Vec<Rational>> {
    vec![
        vec![
            int(1),
            rat(-1, 2),
            int(2),
            rat(1, 3),
            int(-1),
            rat(3, 2),
            rat(1, 5),
        ],
        vec![
            rat(-2, 3),
            int(1),
            int(0),
            int(-2),
            rat(1, 4),
            int(1),
            int(-1),
        ],
        vec![
            int(3),
            int(-1),
            rat(1, 2),
            int(1),
            int(2),
            rat(-3, 4),
            int(0),
        ],
        vec![
            rat(1, 7),
            rat(2, 7),
            rat(3, 7),
            rat(4, 7),
            rat(5, 7),
            rat(6, 7),
            int(1),
        ],
        vec![
            int(-1),
            int(-1),
            int(1),
            int(1),
            int(-1),
            int(1),
            rat(-1, 3),
        ],
    ]
}

impl G2Structure {
    pub fn new(name: impl Into<String>, phi: DifferentialForm) -> Result<Self, G2Error> {
        if phi.dim() != 7 || phi.degree() != 3 {
            return Err(G2Error::NotAThreeForm {
                degree: phi.degree(),
                dim: phi.dim(),
            });
        }
        let constant_coefficients = phi.has_constant_coefficients();
        let mut points = vec![vec![int(0); 7]];
        if !constant_coefficients {
            points.extend(sample_points());
        }
        for p in &points {
            let rank = contraction_matrix(&phi.at_point(p)?).rank();
            if rank != 7 {
                let at = p
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",");
                return Err(G2Error::Degenerate { rank, at });
            }
        }
        let is_closed = phi.is_closed()?;
        Ok(G2Structure {
            name: name.into(),
            phi,
            is_closed,
            constant_coefficients,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn phi(&self) -> &DifferentialForm {
        &self.phi
    }

    pub fn chart_dim(&self) -> usize {
        7
    }

    pub fn is_closed(&self) -> bool {
        self.is_closed
    }

    pub fn has_constant_coefficients(&self) -> bool {
        self.constant_coefficients
    }

    /// Same structure with `φ` scaled by `c`.
    pub fn scaled(&self, c: &Rational) -> Result<Self, G2Error> {
        Self::new(
            format!("{}*{}", crate::algebra::format_rational(c), self.name),
            self.phi.scale(c),
        )
    }

    pub(crate) fn require_closed(&self) -> Result<(), G2Error> {
        if self.is_closed {
            Ok(())
        } else {
            Err(G2Error::NotClosed)
        }
    }

    pub(crate) fn require_constant(&self) -> Result<(), G2Error> {
        if self.constant_coefficients {
            Ok(())
        } else {
            Err(G2Error::NonConstant)
        }
    }
}

/// The 21×7 matrix of `X ↦ X⌟φ` for constant `φ`: column `i` holds the
/// coefficients of `e_i⌟φ` on the lexicographic 2-form basis.
pub fn contraction_matrix(phi: &DifferentialForm) -> RationalMatrix {
    let dim = phi.dim();
    let basis = MultiIndex::all(dim, phi.degree() - 1);
    let mut m = RationalMatrix::zeros(basis.len(), dim);
    for i in 1..=dim {
        let e = VectorField::coordinate(dim, i).expect("index in range");
        let c = phi.interior(&e).expect("dimensions agree");
        for (r, idx) in basis.iter().enumerate() {
            if let Some(p) = c.coefficient_at(idx) {
                m[(r, i - 1)] = p.constant_term();
            }
        }
    }
    m
}
