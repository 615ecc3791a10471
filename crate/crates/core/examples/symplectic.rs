//! The symplectic counterpart: Hamiltonian fields, Poisson brackets,
//! Jacobi, and brackets under symplectomorphisms.
use g2calc::algebra::{int, rat, Polynomial, RationalMatrix};
use g2calc::exterior::PolynomialMap;
use g2calc::symplectic::{
    hamiltonian_field, poisson_bracket, poisson_jacobi_check, preset_omega_std,
    symplectomorphism_bracket_check,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = preset_omega_std(2)?;
    let x = |i| Polynomial::var(4, i).unwrap();
    let h = &(&x(1) * &x(1)) + &(&x(2) * &x(2));
    println!("X_h = {}", hamiltonian_field(&s, &h)?);
    println!("{{x1, x3}} = {}", poisson_bracket(&s, &x(1), &x(3))?);
    println!(
        "Jacobi sum = {}",
        poisson_jacobi_check(&s, &h, &x(3), &(&x(1) * &x(4)))?
    );

    let s1 = preset_omega_std(1)?;
    let y = |i| Polynomial::var(2, i).unwrap();
    let squeeze = PolynomialMap::linear(&RationalMatrix::from_rows(vec![
        vec![int(2), int(0)],
        vec![int(0), rat(1, 2)],
    ]))?;
    let doubling = PolynomialMap::scaling(2, &int(2))?;
    for (name, psi) in [("squeeze", squeeze), ("doubling", doubling)] {
        let r = symplectomorphism_bracket_check(&s1, &s1, &psi, &y(1), &y(2))?;
        println!(
            "{name}: brackets agree {}, psi*omega - omega = {}",
            r.equal, r.form_defect
        );
    }
    Ok(())
}
