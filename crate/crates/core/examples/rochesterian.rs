//! Rochesterian 1-forms: the primitive of X _| φ for a G2 field X, its
//! recovered field, and the bracket with its closure identity.
use g2calc::exterior::VectorField;
use g2calc::g2::{
    is_g2_vector_field, preset_cst, preset_phi0, rochesterian_bracket, rochesterian_field_of,
    rotation_generator, tautological_one_form,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = preset_phi0();
    let x = rotation_generator();
    assert!(is_g2_vector_field(&g, &x)?.is_g2);
    let alpha = g.phi().interior(&x)?.poincare_primitive()?;
    println!("alpha = {alpha}");
    println!("X_alpha = {}", rochesterian_field_of(&g, &alpha)?);

    let beta = g
        .phi()
        .interior(&VectorField::coordinate(7, 1)?)?
        .poincare_primitive()?;
    let r = rochesterian_bracket(&g, &alpha, &beta)?;
    println!("{{alpha, beta}} = {}", r.bracket);
    println!(
        "its field [X_beta, X_alpha] = {}, closure holds: {}",
        r.bracket_field, r.closure_holds
    );

    // on the CST example ∂/∂t is Rochesterian with the tautological 1-form
    let cst = preset_cst();
    println!(
        "CST: X for the tautological form = {}",
        rochesterian_field_of(&cst, &tautological_one_form())?
    );
    Ok(())
}
