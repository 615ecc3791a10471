//! Metric, volume and cross product recovered from a G2 3-form.
use g2calc::algebra::rat;
use g2calc::exterior::VectorField;
use g2calc::g2::{cross_product_field, metric_from_phi, preset_cst, preset_phi0};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for g in [
        preset_phi0(),
        preset_cst(),
        preset_phi0().scaled(&rat(3, 2))?,
    ] {
        let m = metric_from_phi(&g, &[0.0; 7])?;
        println!(
            "{}: g11 = {:.6}, sqrt det g = {:.6}, exact = {}",
            g.name(),
            m.gram[0][0],
            m.volume_coefficient,
            m.exact_gram.is_some()
        );
    }

    let g = preset_phi0();
    for (i, j) in [(1, 2), (2, 5), (4, 6)] {
        let c = cross_product_field(
            &g,
            &VectorField::coordinate(7, i)?,
            &VectorField::coordinate(7, j)?,
        )?;
        println!("e{i} x e{j} = {c}");
    }
    Ok(())
}
