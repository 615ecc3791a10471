//! Decompose 2-forms into the Ω²₇ and Ω²₁₄ pieces.
use g2calc::exterior::{DifferentialForm, VectorField};
use g2calc::g2::{preset_phi0, split_dimensions, split_two_form};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = preset_phi0();
    println!("ranks: {:?}", split_dimensions(&g)?);

    let s = split_two_form(&g, &DifferentialForm::basis(7, &[2, 3])?)?;
    println!("dx[2,3] = ({}) + ({})", s.omega7, s.omega14);
    if let Some(w) = &s.witness_field {
        println!("omega7 part is w _| phi with w = {w}");
    }

    // contractions into phi are entirely in Ω²₇
    let e1 = g.phi().interior(&VectorField::coordinate(7, 1)?)?;
    assert!(split_two_form(&g, &e1)?.omega14.is_zero());
    Ok(())
}
