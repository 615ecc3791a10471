//! Hodge star of the model 3-form, which is the standard coassociative 4-form.
use g2calc::exterior::DifferentialForm;
use g2calc::g2::{hodge_star, preset_phi0, preset_star_phi0};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = preset_phi0();
    let star = hodge_star(&g, g.phi(), &[0.0; 7])?;
    let star = star
        .exact()
        .expect("constant structures have an exact star");
    for (index, c) in star.terms() {
        println!("{c:>3} {index}");
    }
    assert_eq!(star, &preset_star_phi0());

    let e12 = DifferentialForm::basis(7, &[1, 2])?;
    println!(
        "*dx[1,2] = {}",
        hodge_star(&g, &e12, &[0.0; 7])?.exact().unwrap()
    );
    Ok(())
}
