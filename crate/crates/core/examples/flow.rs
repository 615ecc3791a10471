//! RK4 flows with their Jacobians: pullback drift of φ₀ for a G2 field and
//! a non-G2 field, and the fourth-order convergence check.
use g2calc::exterior::VectorField;
use g2calc::g2::{phi0, rotation_generator};
use g2calc::numeric::{integrate_flow, rk4_order_ratio};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let phi = phi0();
    let start: Vec<f64> = (1..=7).map(|i| 0.1 * i as f64).collect();
    let rot = integrate_flow(&rotation_generator(), &phi, &start, 1.0, 1000)?;
    println!(
        "rotation: end {:?}, max drift {:.2e}",
        rot.end_point(),
        rot.max_drift()
    );
    let radial = integrate_flow(&VectorField::radial(7), &phi, &start, 1.0, 1000)?;
    println!("radial: max drift {:.2e}", radial.max_drift());
    println!(
        "RK4 error ratio (20 vs 40 steps): {:.2}",
        rk4_order_ratio(&rotation_generator(), &phi, &start, 1.0, 20)?
    );
    Ok(())
}
