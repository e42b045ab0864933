//! Parse a coefficient, print it back and differentiate it.
//!
//!   cargo run --example expressions

use riccati::expr::{differentiate, evaluate, parse};
use riccati::Bindings;

fn main() -> riccati::Result<()> {
    let e = parse("exp(beta*x)*x^m + besselj(1, x)", &["x", "beta", "m"])?;
    let d = differentiate(&e, "x");
    println!("f(x)  = {e}");
    println!("f'(x) = {d}");

    let env = Bindings::new().with("x", 1.5).with("beta", 1.0).with("m", 2.0);
    println!("f(1.5) = {:.12}, f'(1.5) = {:.12}", evaluate(&e, &env)?, evaluate(&d, &env)?);

    // parameters fold away once bound
    let bound = e.substitute(&Bindings::new().with("beta", 0.0).with("m", 1.0));
    println!("beta = 0, m = 1: {bound}");

    match parse("sin(x", &["x"]) {
        Err(err) => println!("error: {err}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
