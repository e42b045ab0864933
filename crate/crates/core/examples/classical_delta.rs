//! With c = 1 the older condition is that b^2 - 2b' - 4a is constant.
//!
//!   cargo run --example classical_delta

use riccati::riccati::{classical_delta, construct_a};
use riccati::{Bindings, Branch, GeneratingSpec, Grid, Interval, ScalarField};

fn main() -> riccati::Result<()> {
    let dom = Interval::new(-1.0, 1.0)?;
    let grid = Grid::uniform(dom, 64)?;
    let b = ScalarField::parse("2*x", "x", &Bindings::new(), dom)?;
    let c = ScalarField::constant(1.0, dom);
    for k in [0.0, 1.0, 3.0] {
        let a = construct_a(&b, &c, &GeneratingSpec::new(ScalarField::constant(k * k, dom), Branch::Plus))?;
        let r = classical_delta(&a, &b, &grid)?;
        println!("K = {k}: Delta = {:.12} (constant: {})", r.mean, r.is_constant);
    }

    // a non-constant f breaks it
    let f = ScalarField::parse("1 + x^2", "x", &Bindings::new(), dom)?;
    let a = construct_a(&b, &c, &GeneratingSpec::new(f, Branch::Plus))?;
    let r = classical_delta(&a, &b, &grid)?;
    println!("f = 1 + x^2: constant = {}, Delta ranges over [{:.4}, {:.4}]", r.is_constant,
        r.delta.iter().cloned().fold(f64::INFINITY, f64::min), r.delta.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
    Ok(())
}
