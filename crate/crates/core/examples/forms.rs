//! Exact exterior calculus on a chart: wedge, d, contraction, Lie
//! derivative by Cartan's formula and the Poincaré primitive.
use g2calc::algebra::Polynomial;
use g2calc::exterior::{DifferentialForm, VectorField};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = |i| Polynomial::var(3, i);
    let a = DifferentialForm::term(x(2)?, &[1])?;
    let b = DifferentialForm::term(x(1)?, &[3])?;
    let ab = a.wedge(&b)?;
    println!("a ^ b     = {ab}");
    println!("d(a ^ b)  = {}", ab.exterior_derivative()?);

    let rotation = VectorField::new(vec![-x(2)?, x(1)?, Polynomial::zero(3)])?;
    println!("X _| (a^b) = {}", ab.interior(&rotation)?);
    println!("L_X (a^b)  = {}", ab.lie_derivative(&rotation)?);

    // dd = 0, and the primitive of a closed form recovers it
    let closed = a.exterior_derivative()?;
    let primitive = closed.poincare_primitive()?;
    println!("primitive of {closed} is {primitive}");
    assert_eq!(primitive.exterior_derivative()?, closed);
    Ok(())
}
