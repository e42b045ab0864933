//! Build `a` from `(b, c, f)`, then evaluate the general solution and check it.
//!
//!   cargo run --example construct_and_solve

use riccati::riccati::{construct_a, general_solution, particular_solution};
use riccati::verify::residual;
use riccati::{Bindings, Branch, GeneratingSpec, Grid, Interval, ScalarField};

fn main() -> riccati::Result<()> {
    let dom = Interval::new(0.0, 2.0)?;
    let field = |s: &str| ScalarField::parse(s, "x", &Bindings::new(), dom);
    let b = field("2*x")?;
    let c = field("1")?;

    for f in ["0", "4", "(1 + x)^2"] {
        for branch in Branch::both() {
            let spec = GeneratingSpec::new(field(f)?, branch);
            let a = construct_a(&b, &c, &spec)?;
            let yp = particular_solution(&b, &c, &spec)?;
            let fam = general_solution(&b, &c, &spec, 3.0)?;
            let grid = Grid::uniform(dom, 256)?.avoiding(fam.poles(), 0.05)?;
            let r = residual(&fam.general(), fam.system(), &grid)?;
            println!(
                "f = {f:<10} {branch:<5}  a(1) = {:>9.5}  yp(1) = {:>8.5}  poles {:?}  residual {:.1e} ({:?})",
                a.eval(1.0)?,
                yp.eval(1.0)?,
                fam.poles(),
                r.max_residual,
                r.path
            );
        }
    }
    Ok(())
}
