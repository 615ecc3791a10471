//! The form-expression language: parse, evaluate, and print canonically.
use g2calc::cli::{parse, parse_form};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for input in [
        "d(x1*x2 dx[3])",
        "i_[1,0,0,0,0,0,0](@phi0)",
        "L_[0,x3,-x2,x5,-x4,-2x7,2x6](@phi0)",
        "dx[2,1]^dx[3] - -x4*dx[1,2,3]",
    ] {
        let (expr, ty) = parse(input, 7)?;
        println!(
            "{input}\n  printed  {expr}\n  type     {ty:?}\n  value    {}",
            expr.evaluate(7)?.into_form()?
        );
    }
    match parse_form("dx[1] + dx[1,2]", 7) {
        Err(e) => println!("error: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
