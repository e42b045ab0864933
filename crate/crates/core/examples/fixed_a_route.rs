//! Keep `a` and `b`, build `c` instead.
//!
//!   cargo run --example fixed_a_route

use riccati::riccati::{construct_c, general_solution_fixed_a};
use riccati::verify::residual;
use riccati::{Bindings, Branch, GeneratingSpec, Grid, Interval, ScalarField};

fn main() -> riccati::Result<()> {
    let dom = Interval::new(1.0, 2.0)?;
    let field = |s: &str| ScalarField::parse(s, "x", &Bindings::new(), dom);
    let a = field("sin(x) + 0.3")?;
    let b = field("1/x")?;
    let spec = GeneratingSpec::new(field("x^(-2) + 1")?, Branch::Plus);

    for k in [2.0, 5.0, 10.0] {
        let c = construct_c(&a, &b, &spec, k)?;
        let fam = general_solution_fixed_a(&a, &b, &spec, k, 2.0)?;
        let grid = Grid::uniform(dom, 200)?.avoiding(fam.poles(), 0.05)?;
        let r = residual(&fam.general(), fam.system(), &grid)?;
        println!("k = {k:>4}: c(1.5) = {:.8}, y(1.5) = {:.8}, residual {:.1e}", c.eval(1.5)?, fam.general().eval(1.5)?, r.max_residual);
    }

    // the denominator k - ∫aI must not vanish
    if let Err(e) = construct_c(&a, &b, &spec, 0.1) {
        println!("k = 0.1: {e}");
    }
    Ok(())
}
