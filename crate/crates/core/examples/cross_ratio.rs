//! Four solutions of one Riccati equation have a constant cross ratio.
//!
//!   cargo run --example cross_ratio

use riccati::riccati::general_solution;
use riccati::verify::{cross_ratio_family, detect_poles};
use riccati::{Bindings, Branch, GeneratingSpec, Grid, Interval, ScalarField};

fn main() -> riccati::Result<()> {
    let dom = Interval::new(0.0, 1.0)?;
    let field = |s: &str| ScalarField::parse(s, "x", &Bindings::new(), dom);
    let fam = general_solution(&field("x")?, &field("1 + x")?, &GeneratingSpec::new(field("0.5")?, Branch::Plus), 1.0)?;

    let constants = [2.0, 3.0, 5.0, 8.0];
    let mut poles = Vec::new();
    for c in constants {
        poles.extend(detect_poles(&fam.denominator(c), dom)?);
    }
    let grid = Grid::uniform(dom, 16)?.avoiding(&poles, 0.02)?;
    let r = cross_ratio_family(&fam, constants, &grid)?;
    for (x, v) in r.xs.iter().zip(&r.values) {
        println!("x = {x:.4}  CR = {v:.15}");
    }
    println!("deviation {:.1e}", r.deviation);
    Ok(())
}
