//! G2-morphisms, the graph criterion, and bracket pullback.
use g2calc::algebra::int;
use g2calc::exterior::{PolynomialMap, VectorField};
use g2calc::g2::{
    bracket_pullback_check, graph_criterion, integer_rotation, is_g2_morphism, preset_phi0,
    rotation_generator,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = preset_phi0();
    let maps = [
        ("rotation", integer_rotation()),
        (
            "translation",
            PolynomialMap::translation(&[int(1), int(0), int(-2), int(0), int(0), int(3), int(0)])?,
        ),
        ("doubling", PolynomialMap::scaling(7, &int(2))?),
    ];
    let alpha = g
        .phi()
        .interior(&rotation_generator())?
        .poincare_primitive()?;
    let beta = g
        .phi()
        .interior(&VectorField::coordinate(7, 2)?)?
        .poincare_primitive()?;
    for (name, psi) in maps {
        let m = is_g2_morphism(&g, &g, &psi)?;
        let graph = graph_criterion(&g, &g, &psi)?;
        let pull = bracket_pullback_check(&g, &g, &psi, &alpha, &beta)?;
        println!(
            "{name}: morphism {}, graph restriction {}, paths agree {}, bracket pullback equal {}",
            m.is_morphism, graph.restricted, graph.paths_agree, pull.equal
        );
    }
    Ok(())
}
