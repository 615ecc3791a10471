//! The Rochesterian bracket fails Jacobi by an exact term, unlike the
//! Poisson bracket.
use g2calc::exterior::{DifferentialForm, VectorField};
use g2calc::g2::{jacobi_defect, preset_phi0, rotation_generator, G2Structure};

fn primitive(g: &G2Structure, x: &VectorField) -> DifferentialForm {
    g.phi()
        .interior(x)
        .and_then(|a| a.poincare_primitive())
        .expect("G2 field")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = preset_phi0();
    let e = |i| VectorField::coordinate(7, i).unwrap();
    let gamma = primitive(&g, &rotation_generator());
    for (i, j) in [(1, 2), (2, 1)] {
        let j_ = jacobi_defect(&g, &primitive(&g, &e(i)), &primitive(&g, &e(j)), &gamma)?;
        println!(
            "(e{i}, e{j}, rotation): cyclic sum = {}, d(dγ(X_α, X_β)) = {}",
            j_.lhs, j_.rhs
        );
        assert!(j_.holds());
    }
    Ok(())
}
