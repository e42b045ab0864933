//! Travelling-wave profile: b Psi'' + a Psi' + V Psi = 0 in xi = v t - x.
//!
//!   cargo run --example soliton

use riccati::oscillator::{soliton_profile, Case, ConditionSpec, SolitonProblem};
use riccati::{Bindings, Branch, Interval, ScalarField};

fn main() -> riccati::Result<()> {
    let dom = Interval::new(0.0, 6.0)?;
    let field = |s: &str| ScalarField::parse(s, "xi", &Bindings::new(), dom);

    // b = 1, a = 0, V = -1: Psi'' = Psi, the decaying tail e^{-xi}
    let problem = SolitonProblem { a: field("0")?, b: field("1")?, potential: field("-1")?, speed: 2.0, domain: dom };
    let spec = ConditionSpec { k: Some(2.0), branch: Some(Branch::Minus), ..ConditionSpec::default() };
    let tail = soliton_profile(&problem, 1.0, -1.0, Case::Case2, &spec)?;

    // b = 2, a = 4, V = 2: gamma = 2, omega^2 = 1
    let critical = SolitonProblem { a: field("4")?, b: field("2")?, potential: field("2")?, speed: 1.0, domain: dom };
    let hump = soliton_profile(&critical, 0.0, 1.0, Case::Case1, &ConditionSpec::default());

    for i in 0..=6 {
        let xi = i as f64;
        println!("xi = {xi}: Psi = {:.10} (e^-xi = {:.10})", tail.x.eval(xi)?, (-xi).exp());
    }
    match hump {
        Ok(s) => println!("critical profile at xi = 1: {:.10}", s.x.eval(1.0)?),
        // Psi(0) = 0 makes u = Psi'/Psi singular at the start
        Err(e) => println!("Psi(0) = 0: {e}"),
    }
    let shifted = soliton_profile(&critical, 1.0, 0.0, Case::Case1, &ConditionSpec::default())?;
    println!("Psi(0) = 1, Psi'(0) = 0: Psi(1) = {:.10} = 2/e", shifted.x.eval(1.0)?);

    let broken = SolitonProblem { potential: field("3")?, ..critical };
    if let Err(e) = soliton_profile(&broken, 1.0, 0.0, Case::Case1, &ConditionSpec::default()) {
        println!("V = 3: {e}");
    }
    Ok(())
}
