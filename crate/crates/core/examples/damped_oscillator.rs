//! x'' + gamma(t) x' + omega^2(t) x = 0 in closed form, three ways.
//!
//!   cargo run --example damped_oscillator

use riccati::oscillator::{case1, case2, case3, rk_oscillator};
use riccati::{Bindings, Branch, Interval, ScalarField};

fn main() -> riccati::Result<()> {
    let dom = Interval::new(0.0, 4.0)?;
    let field = |s: &str| ScalarField::parse(s, "t", &Bindings::new(), dom);

    // critical damping: gamma = 2, omega^2 = 1
    let s1 = case1(&field("2")?, 1.0, 0.0, dom)?;
    // time-dependent damping; omega^2 follows from the condition
    let s2 = case2(&field("1 + 0.5*sin(t)")?, 0.5, 1.0, 0.0, Branch::Plus, dom)?;
    // gamma = 0 with f = (1+t)^-2 gives x'' = (3/4)(1+t)^-2 x
    let s3 = case3(&field("0")?, &field("(1+t)^(-2)")?, 1.0, 0.2, Branch::Plus, dom)?;

    println!("{:>5} {:>14} {:>14} {:>14}", "t", "case 1", "case 2", "case 3");
    for i in 0..=8 {
        let t = 0.5 * i as f64;
        println!("{t:>5.2} {:>14.10} {:>14.10} {:>14.10}", s1.x.eval(t)?, s2.x.eval(t)?, s3.x.eval(t)?);
    }

    for (name, s) in [("case 1", &s1), ("case 2", &s2), ("case 3", &s3)] {
        let traj = rk_oscillator(&s.gamma, &s.omega2, s.x0, s.v0, dom, 1e-12)?;
        let worst = traj.xs.iter().zip(&traj.ys).map(|(t, y)| (y[0] - s.x.eval(*t).unwrap()).abs()).fold(0.0, f64::max);
        println!("{name}: omega^2(1) = {:.8}, |x - rk| <= {worst:.1e}", s.omega2.eval(1.0)?);
    }
    Ok(())
}
