//! Dormand-Prince against closed forms, and where solutions blow up.
//!
//!   cargo run --example oracle_and_poles

use riccati::riccati::general_solution;
use riccati::verify::{detect_poles, relative_error, rk_integrate, Termination};
use riccati::{GeneratingSpec, Interval, RiccatiSystem, ScalarField};

fn main() -> riccati::Result<()> {
    let dom = Interval::new(0.0, 2.0)?;
    let one = ScalarField::constant(1.0, dom);
    let zero = ScalarField::constant(0.0, dom);

    // y' = 1 + y^2, y(0) = 0 is tan x
    let sys = RiccatiSystem::new(one.clone(), zero.clone(), one.clone(), dom)?;
    let t = rk_integrate(&sys, 0.0, 0.0, Interval::new(0.0, 1.0)?, 1e-12)?;
    println!("tan(1): rk {:.15}, exact {:.15}", t.last().1[0], 1f64.tan());
    let t = rk_integrate(&sys, 0.0, 0.0, dom, 1e-10)?;
    if let Termination::BlowUp { x } = t.status {
        println!("blow-up at {x:.8} (pi/2 = {:.8}) after {} steps", std::f64::consts::FRAC_PI_2, t.xs.len());
    }

    // y' = y^2: members 1/(C - x); the pole sits at x = C
    let fam = general_solution(&zero, &one, &GeneratingSpec::zero(dom), 1.25)?;
    println!("poles of 1/(1.25 - x): {:?}", fam.poles());
    println!("by scanning the denominator: {:?}", detect_poles(&fam.denominator(1.25), dom)?);

    let y = fam.general();
    let end = Interval::new(0.0, 0.99 * 1.25)?;
    let t = rk_integrate(fam.system(), 0.0, y.eval(0.0)?, end, 1e-12)?;
    let worst = t.xs.iter().zip(&t.ys).map(|(x, v)| relative_error(v[0], y.eval(*x).unwrap())).fold(0.0, f64::max);
    println!("closed form vs rk up to 0.99 of the pole: relative error {worst:.2e}");
    Ok(())
}
