use super::bracket::rochesterian_bracket;
use super::{G2Error, G2Structure};
use crate::algebra::Polynomial;
use crate::exterior::{DifferentialForm, ExteriorError, PolynomialMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismReport {
    /// `ψ*φ_dst − φ_src`.
    pub defect: DifferentialForm,
    pub is_morphism: bool,
}

fn require_seven(map: &PolynomialMap) -> Result<(), G2Error> {
    for d in [map.source_dim(), map.target_dim()] {
        if d != 7 {
            return Err(ExteriorError::DimensionMismatch { left: 7, right: d }.into());
        }
    }
    Ok(())
}

/// `ψ : (M, φ_src) → (M', φ_dst)` is a G₂-morphism iff `ψ*φ_dst = φ_src`.
pub fn is_g2_morphism(
    src: &G2Structure,
    dst: &G2Structure,
    map: &PolynomialMap,
) -> Result<MorphismReport, G2Error> {
    require_seven(map)?;
    let defect = map.pullback(dst.phi())?.checked_sub(src.phi())?;
    Ok(MorphismReport {
        is_morphism: defect.is_zero(),
        defect,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphReport {
    /// `Υ̃*(π₁*φ₁ − π₂*φ₂)` with `Υ̃(p) = (p, Υ(p))`.
    pub restricted: DifferentialForm,
    /// `φ₁ − Υ*φ₂`, computed directly.
    pub direct: DifferentialForm,
    pub vanishes: bool,
    pub paths_agree: bool,
}

fn projection(first: bool) -> PolynomialMap {
    let offset = if first { 1 } else { 8 };
    let coords = (0..7)
        .map(|i| Polynomial::var(14, offset + i).expect("index in range"))
        .collect();
    PolynomialMap::new(14, coords).expect("valid projection")
}

/// Restricts `φ̃ = π₁*φ₁ − π₂*φ₂` on the 14-variable product chart to the
/// graph of `Υ`; the restriction vanishes iff `Υ` is a G₂-morphism.
pub fn graph_criterion(
    g1: &G2Structure,
    g2: &G2Structure,
    upsilon: &PolynomialMap,
) -> Result<GraphReport, G2Error> {
    require_seven(upsilon)?;
    let product_form = projection(true)
        .pullback(g1.phi())?
        .checked_sub(&projection(false).pullback(g2.phi())?)?;
    let mut graph_coords: Vec<Polynomial> = (1..=7)
        .map(|i| Polynomial::var(7, i))
        .collect::<Result<_, _>>()?;
    graph_coords.extend(upsilon.coordinates().iter().cloned());
    let graph = PolynomialMap::new(7, graph_coords)?;
    let restricted = graph.pullback(&product_form)?;
    let direct = g1.phi().checked_sub(&upsilon.pullback(g2.phi())?)?;
    Ok(GraphReport {
        vanishes: restricted.is_zero(),
        paths_agree: restricted == direct,
        restricted,
        direct,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketPullback {
    /// `ψ*{α, β}` (bracket taken on the target).
    pub lhs: DifferentialForm,
    /// `{ψ*α, ψ*β}` (bracket taken on the source).
    pub rhs: DifferentialForm,
    pub equal: bool,
}

impl BracketPullback {
    pub fn difference(&self) -> DifferentialForm {
        &self.lhs - &self.rhs
    }
}

pub fn bracket_pullback_check(
    src: &G2Structure,
    dst: &G2Structure,
    map: &PolynomialMap,
    alpha: &DifferentialForm,
    beta: &DifferentialForm,
) -> Result<BracketPullback, G2Error> {
    require_seven(map)?;
    let lhs = map.pullback(&rochesterian_bracket(dst, alpha, beta)?.bracket)?;
    let rhs = rochesterian_bracket(src, &map.pullback(alpha)?, &map.pullback(beta)?)?.bracket;
    Ok(BracketPullback {
        equal: lhs == rhs,
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use crate::exterior::VectorField;
    use crate::g2::{integer_rotation, phi0, preset_phi0};

    fn primitive(i: usize) -> DifferentialForm {
        phi0()
            .interior(&VectorField::coordinate(7, i).unwrap())
            .unwrap()
            .poincare_primitive()
            .unwrap()
    }

    #[test]
    fn morphism_examples() {
        let g = preset_phi0();
        let t = PolynomialMap::translation(&[
            int(1),
            rat(-2, 3),
            int(0),
            int(5),
            int(1),
            int(1),
            int(-4),
        ])
        .unwrap();
        assert!(is_g2_morphism(&g, &g, &t).unwrap().is_morphism);
        let double = PolynomialMap::scaling(7, &int(2)).unwrap();
        let r = is_g2_morphism(&g, &g, &double).unwrap();
        assert!(!r.is_morphism);
        assert_eq!(r.defect, phi0().scale(&int(7)));
        assert!(
            is_g2_morphism(&g, &g, &integer_rotation())
                .unwrap()
                .is_morphism
        );
    }

    #[test]
    fn graph_examples() {
        let g = preset_phi0();
        let id = graph_criterion(&g, &g, &PolynomialMap::identity(7)).unwrap();
        assert!(id.vanishes && id.paths_agree);
        let double = graph_criterion(&g, &g, &PolynomialMap::scaling(7, &int(2)).unwrap()).unwrap();
        assert!(!double.vanishes && double.paths_agree);
        assert_eq!(double.restricted, phi0().scale(&int(-7)));
    }

    #[test]
    fn bracket_pullback_examples() {
        let g = preset_phi0();
        let (a, b) = (primitive(1), primitive(2));
        let t = PolynomialMap::translation(&vec![int(1); 7]).unwrap();
        let r = bracket_pullback_check(&g, &g, &t, &a, &b).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, DifferentialForm::basis(7, &[3]).unwrap());
        let double = PolynomialMap::scaling(7, &int(2)).unwrap();
        let r = bracket_pullback_check(&g, &g, &double, &a, &b).unwrap();
        assert!(!r.equal && !r.difference().is_zero());
    }
}
