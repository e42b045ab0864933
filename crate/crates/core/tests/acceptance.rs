//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test --test acceptance`.

use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use riccati::catalog::{self, Options};
use riccati::expr::{differentiate, evaluate, parse_unchecked, BinOp, Func};
use riccati::numerics::{fd_derivative, integrate};
use riccati::oscillator::{case1, case2, case3, rk_oscillator};
use riccati::riccati::{classical_delta, construct_a, general_solution, particular_solution};
use riccati::verify::{cross_ratio, cross_ratio_family, detect_poles, relative_error, residual, rk_integrate, Termination};
use riccati::{Bindings, Branch, Expr, GeneratingSpec, Grid, Interval, RiccatiSystem, ScalarField};

type Outcome = Result<String, String>;

fn iv(lo: f64, hi: f64) -> Interval {
    Interval::new(lo, hi).unwrap()
}

fn field(src: &str, var: &str, dom: Interval) -> ScalarField {
    ScalarField::parse(src, var, &Bindings::new(), dom).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalog_soundness() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for entry in catalog::list() {
        let inst = catalog::instantiate(entry.id, &Bindings::new()).map_err(|e| format!("{}: {e}", entry.id))?;
        let report = inst.soundness(512, 1e-8).map_err(|e| e.to_string())?;
        ensure(report.pass, || format!("{}: max residual {:.3e}", entry.id, report.max_residual))?;
        worst = worst.max(report.max_residual);
    }
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 10.0, || format!("took {elapsed:.2} s"))?;
    Ok(format!("worst residual {worst:.2e}, {elapsed:.2} s"))
}

fn theorem_verification() -> Outcome {
    let (mut worst_res, mut worst_rk): (f64, f64) = (0.0, 0.0);
    for entry in catalog::list() {
        for constant in [-1.0, 1.0, 10.0] {
            let opts = Options { constant: Some(constant), ..Options::default() };
            let inst = catalog::instantiate_with(entry.id, &Bindings::new(), opts).map_err(|e| e.to_string())?;
            let fam = &inst.family;
            let dom = fam.domain();
            let y = fam.general();
            let grid = Grid::uniform(dom, 512).unwrap().avoiding(fam.poles(), 0.02 * dom.len()).map_err(|e| e.to_string())?;
            let r = residual(&y, fam.system(), &grid).map_err(|e| e.to_string())?;
            ensure(r.passes(1e-7), || format!("{} C={constant}: residual {:.3e} at {}", entry.id, r.max_residual, r.worst_x))?;
            worst_res = worst_res.max(r.max_residual);

            let lo = dom.lo();
            let end = fam.poles().first().map_or(dom.hi(), |p| lo + 0.99 * (p - lo));
            let traj = rk_integrate(fam.system(), lo, y.eval(lo).unwrap(), iv(lo, end), 1e-12).map_err(|e| e.to_string())?;
            ensure(traj.status == Termination::Completed, || format!("{} C={constant}: {:?}", entry.id, traj.status))?;
            for (x, v) in traj.xs.iter().zip(&traj.ys) {
                let err = relative_error(v[0], y.eval(*x).unwrap());
                ensure(err <= 1e-6, || format!("{} C={constant}: RK relative error {err:.3e} at x={x}", entry.id))?;
                worst_rk = worst_rk.max(err);
            }
        }
    }
    Ok(format!("worst residual {worst_res:.2e}, worst RK relative error {worst_rk:.2e}"))
}

fn classical_equivalence() -> Outcome {
    let dom = iv(-2.0, 2.0);
    let grid = Grid::uniform(dom, 512).unwrap();
    let mut worst: f64 = 0.0;
    for k in [1.0f64, 3.0] {
        let b = field("2*x", "x", dom);
        let spec = GeneratingSpec::new(ScalarField::constant(k * k, dom), Branch::Plus);
        let a = construct_a(&b, &ScalarField::constant(1.0, dom), &spec).map_err(|e| e.to_string())?;
        let report = classical_delta(&a, &b, &grid).map_err(|e| e.to_string())?;
        for (x, d) in grid.points().iter().zip(&report.delta) {
            let err = (d - k * k).abs();
            ensure(err <= 1e-9 * (1.0 + k * k), || format!("K={k}: Delta({x}) = {d}"))?;
            worst = worst.max(err);
        }
    }
    Ok(format!("max |Delta - K^2| = {worst:.2e}"))
}

fn regime_reductions() -> Outcome {
    // f = 0: y = 1/(C - ∫c) - b/(2c), with ∫c by independent quadrature
    let dom = iv(0.0, 1.5);
    let b = field("1 + x*sin(x)", "x", dom);
    let c = field("2 + cos(3*x)", "x", dom);
    let constant = 4.0;
    let fam = general_solution(&b, &c, &GeneratingSpec::zero(dom), constant).map_err(|e| e.to_string())?;
    let y = fam.general();
    let mut worst_f0: f64 = 0.0;
    for &x in Grid::uniform(dom, 200).unwrap().points() {
        let q = integrate(&c, 0.0, x, 1e-13).map_err(|e| e.to_string())?;
        let expect = 1.0 / (constant - q) - b.eval(x).unwrap() / (2.0 * c.eval(x).unwrap());
        let err = (y.eval(x).unwrap() - expect).abs();
        ensure(err <= 1e-10, || format!("f=0 at x={x}: {err:.3e}"))?;
        worst_f0 = worst_f0.max(err);
    }

    // f = b^2, plus branch, b > 0: a = 0, a Bernoulli equation y' = b y + c y^2.
    // With w = 1/y: w' = -b w - c, so w = e^{-B} (w0 - ∫ c e^{B}).
    let dom = iv(0.0, 1.0);
    let b = field("1 + x^2", "x", dom);
    let c = field("0.5 + x", "x", dom);
    let spec = GeneratingSpec::new(b.square(), Branch::Plus);
    let fam = general_solution(&b, &c, &spec, 3.0).map_err(|e| e.to_string())?;
    let grid = Grid::uniform(dom, 512).unwrap();
    let a_max = grid.points().iter().fold(0.0f64, |m, &x| m.max(fam.system().a().eval(x).unwrap().abs()));
    ensure(a_max <= 1e-9, || format!("f=b^2: max |a| = {a_max:.3e}"))?;
    let y = fam.general();
    let w0 = 1.0 / y.eval(0.0).unwrap();
    let big_b = |x: f64| x + x * x * x / 3.0;
    let weight = ScalarField::from_fn(dom, move |x| Ok((0.5 + x) * (x + x * x * x / 3.0).exp()));
    let mut worst_bern: f64 = 0.0;
    for &x in Grid::uniform(dom, 200).unwrap().points() {
        let w = (-big_b(x)).exp() * (w0 - integrate(&weight, 0.0, x, 1e-13).map_err(|e| e.to_string())?);
        let err = (y.eval(x).unwrap() - 1.0 / w).abs();
        ensure(err <= 1e-8, || format!("Bernoulli at x={x}: {err:.3e}"))?;
        worst_bern = worst_bern.max(err);
    }
    Ok(format!("f=0 error {worst_f0:.2e}; f=b^2 max|a| {a_max:.2e}, Bernoulli error {worst_bern:.2e}"))
}

fn randomized_construction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20261015);
    let dom = iv(0.0, 1.0);
    let grid = Grid::uniform(dom, 256).unwrap();
    let (mut worst_p, mut worst_g): (f64, f64) = (0.0, 0.0);
    for trial in 0..50 {
        let r = |rng: &mut ChaCha8Rng, lo: f64, hi: f64| rng.gen_range(lo..hi);
        let b = format!("{} + {}*x + {}*sin({}*x)", r(&mut rng, -2.0, 2.0), r(&mut rng, -2.0, 2.0), r(&mut rng, -1.0, 1.0), r(&mut rng, 0.5, 3.0));
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let c = format!("{}*({} + {}*x^2 + {}*cos(x))", sign, r(&mut rng, 1.5, 3.0), r(&mut rng, 0.0, 1.0), r(&mut rng, -0.5, 0.5));
        let f = format!("({} + {}*x)^2 + {}*exp(-x)", r(&mut rng, -1.0, 1.0), r(&mut rng, -1.0, 1.0), r(&mut rng, 0.0, 2.0));
        let constant = r(&mut rng, -5.0, 5.0);
        let (bf, cf, ff) = (field(&b, "x", dom), field(&c, "x", dom), field(&f, "x", dom));
        for branch in Branch::both() {
            let tag = || format!("trial {trial} {branch}: b={b}, c={c}, f={f}");
            let spec = GeneratingSpec::new(ff.clone(), branch);
            let a = construct_a(&bf, &cf, &spec).map_err(|e| format!("{}: {e}", tag()))?;
            let sys = RiccatiSystem::new(a, bf.clone(), cf.clone(), dom).map_err(|e| format!("{}: {e}", tag()))?;
            let yp = particular_solution(&bf, &cf, &spec).map_err(|e| e.to_string())?;
            let rp = residual(&yp, &sys, &grid).map_err(|e| e.to_string())?;
            ensure(rp.passes(1e-8), || format!("{}: particular residual {:.3e}", tag(), rp.max_residual))?;
            let fam = general_solution(&bf, &cf, &spec, constant).map_err(|e| format!("{}: {e}", tag()))?;
            let sub = grid.avoiding(fam.poles(), 0.02).map_err(|e| e.to_string())?;
            let rg = residual(&fam.general(), fam.system(), &sub).map_err(|e| e.to_string())?;
            ensure(rg.passes(1e-7), || format!("{}: general residual {:.3e} at {}", tag(), rg.max_residual, rg.worst_x))?;
            worst_p = worst_p.max(rp.max_residual);
            worst_g = worst_g.max(rg.max_residual);
        }
    }
    Ok(format!("100 constructions, worst particular {worst_p:.2e}, worst general {worst_g:.2e}"))
}

fn cross_ratio_constancy() -> Outcome {
    let dom = iv(0.0, 0.9);
    let ys: Vec<ScalarField> = (1..=4).map(|c| field(&format!("1/({c} - x)"), "x", dom)).collect();
    let fam = general_solution(&ScalarField::constant(0.0, dom), &ScalarField::constant(1.0, dom), &GeneratingSpec::zero(dom), 1.0)
        .map_err(|e| e.to_string())?;
    let grid = Grid::uniform(dom, 200).unwrap();
    let members = [1.0, 2.0, 3.0, 4.0].map(|c| fam.member(c));
    let r = cross_ratio([&members[0], &members[1], &members[2], &members[3]], &grid).map_err(|e| e.to_string())?;
    let max_dev = r.values.iter().fold(0.0f64, |m, v| m.max((v - 4.0 / 3.0).abs()));
    ensure(max_dev <= 1e-10, || format!("y' = y^2: |CR - 4/3| = {max_dev:.3e}"))?;
    let direct = cross_ratio([&ys[0], &ys[1], &ys[2], &ys[3]], &grid).map_err(|e| e.to_string())?;
    ensure((direct.mean - 4.0 / 3.0).abs() <= 1e-10, || "closed-form members".into())?;

    let constants = [-1.0, 1.0, 10.0, 100.0];
    let mut worst: f64 = 0.0;
    for entry in catalog::list() {
        let inst = catalog::instantiate(entry.id, &Bindings::new()).map_err(|e| e.to_string())?;
        let fam = &inst.family;
        let dom = fam.domain();
        let mut poles = Vec::new();
        for c in constants {
            poles.extend(detect_poles(&fam.denominator(c), dom).map_err(|e| e.to_string())?);
        }
        let grid = Grid::uniform(dom, 256).unwrap().avoiding(&poles, 0.02 * dom.len()).map_err(|e| e.to_string())?;
        let r = cross_ratio_family(fam, constants, &grid).map_err(|e| e.to_string())?;
        ensure(r.deviation <= 1e-8, || format!("{}: deviation {:.3e}", entry.id, r.deviation))?;
        worst = worst.max(r.deviation);
    }
    Ok(format!("y' = y^2 within {max_dev:.2e}; catalog worst deviation {worst:.2e}"))
}

fn oscillator_closed_forms() -> Outcome {
    let dom = iv(0.0, 5.0);
    let s1 = case1(&field("2", "t", dom), 1.0, 0.0, dom).map_err(|e| e.to_string())?;
    for &t in Grid::uniform(dom, 500).unwrap().points() {
        let err = (s1.x.eval(t).unwrap() - (1.0 + t) * (-t).exp()).abs();
        ensure(err <= 1e-8, || format!("case 1 at t={t}: {err:.3e}"))?;
    }

    let dom = iv(0.0, 3.0);
    let (x0, v0) = (1.0, 0.5);
    for branch in Branch::both() {
        let s2 = case2(&field("0", "t", dom), 2.0, x0, v0, branch, dom).map_err(|e| e.to_string())?;
        for &t in Grid::uniform(dom, 300).unwrap().points() {
            let err = (s2.x.eval(t).unwrap() - (x0 * t.cosh() + v0 * t.sinh())).abs();
            ensure(err <= 1e-6, || format!("case 2 {branch} at t={t}: {err:.3e}"))?;
        }
    }

    let dom = iv(0.0, 4.0);
    let s3 = case3(&field("0", "t", dom), &field("(1+t)^(-2)", "t", dom), 1.0, 0.2, Branch::Plus, dom)
        .map_err(|e| e.to_string())?;
    let traj = rk_oscillator(&s3.gamma, &s3.omega2, 1.0, 0.2, dom, 1e-12).map_err(|e| e.to_string())?;
    let mut worst_rk: f64 = 0.0;
    for (t, y) in traj.xs.iter().zip(&traj.ys) {
        worst_rk = worst_rk.max((y[0] - s3.x.eval(*t).unwrap()).abs());
    }
    ensure(worst_rk <= 1e-6, || format!("Euler instance vs RK: {worst_rk:.3e}"))?;

    let dom = iv(0.0, 3.0);
    let gamma = field("0.5 + 0.2*t", "t", dom);
    let mut worst_nest: f64 = 0.0;
    let c1 = case1(&gamma, 1.0, -0.3, dom).map_err(|e| e.to_string())?;
    let c3 = case3(&gamma, &field("0", "t", dom), 1.0, -0.3, Branch::Plus, dom).map_err(|e| e.to_string())?;
    let mut pairs = vec![(c1, c3)];
    for branch in Branch::both() {
        let c2 = case2(&gamma, 1.5, 1.0, -0.3, branch, dom).map_err(|e| e.to_string())?;
        let c3 = case3(&gamma, &field("2.25", "t", dom), 1.0, -0.3, branch, dom).map_err(|e| e.to_string())?;
        pairs.push((c2, c3));
    }
    for (p, q) in &pairs {
        for &t in Grid::uniform(dom, 300).unwrap().points() {
            worst_nest = worst_nest.max((p.x.eval(t).unwrap() - q.x.eval(t).unwrap()).abs());
        }
    }
    ensure(worst_nest <= 1e-8, || format!("nesting: {worst_nest:.3e}"))?;
    Ok(format!("Euler vs RK {worst_rk:.2e}, nesting {worst_nest:.2e}"))
}

fn oracle_sanity() -> Outcome {
    let dom = iv(0.0, 2.0);
    let one = ScalarField::constant(1.0, dom);
    let zero = ScalarField::constant(0.0, dom);
    let tan_sys = RiccatiSystem::new(one.clone(), zero.clone(), one.clone(), dom).unwrap();
    let t = rk_integrate(&tan_sys, 0.0, 0.0, iv(0.0, 1.0), 1e-12).map_err(|e| e.to_string())?;
    let err = (t.last().1[0] - 1f64.tan()).abs();
    ensure(err <= 1e-6, || format!("tan 1 error {err:.3e}"))?;
    let t = rk_integrate(&tan_sys, 0.0, 0.0, dom, 1e-10).map_err(|e| e.to_string())?;
    let Termination::BlowUp { x: x_tan } = t.status else { return Err(format!("no blow-up for tan: {:?}", t.status)) };
    ensure((x_tan - std::f64::consts::FRAC_PI_2).abs() <= 1e-3, || format!("tan blow-up at {x_tan}"))?;
    let sq_sys = RiccatiSystem::new(zero.clone(), zero, one, dom).unwrap();
    let t = rk_integrate(&sq_sys, 0.0, 1.0, dom, 1e-10).map_err(|e| e.to_string())?;
    let Termination::BlowUp { x: x_sq } = t.status else { return Err(format!("no blow-up for y^2: {:?}", t.status)) };
    ensure((x_sq - 1.0).abs() <= 1e-3, || format!("y^2 blow-up at {x_sq}"))?;
    Ok(format!("tan 1 error {err:.2e}, blow-ups at {x_tan:.6} and {x_sq:.6}"))
}

fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..4) {
            0 | 1 => Expr::Sym(Arc::from("x")),
            2 => Expr::Num(rng.gen_range(1..10) as f64),
            _ => Expr::Num((rng.gen_range(0.0..5.0) * 1000.0f64).round() / 1000.0),
        };
    }
    let sub = |rng: &mut ChaCha8Rng| Arc::new(random_expr(rng, depth - 1));
    match rng.gen_range(0..10) {
        0 => Expr::Neg(sub(rng)),
        1..=4 => {
            let op = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div][rng.gen_range(0..4)];
            Expr::Binary(op, sub(rng), sub(rng))
        }
        5 => {
            let exponent = if rng.gen_bool(0.5) { Expr::Num(rng.gen_range(2..4) as f64) } else { random_expr(rng, 0) };
            Expr::Binary(BinOp::Pow, sub(rng), Arc::new(exponent))
        }
        6 => Expr::BesselJ(rng.gen_range(0..4), sub(rng)),
        _ => {
            let func = [Func::Exp, Func::Log, Func::Sin, Func::Cos, Func::Tan, Func::Sqrt][rng.gen_range(0..6)];
            Expr::Call(func, sub(rng))
        }
    }
}

fn parser_and_derivatives() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut accepted, mut drawn) = (0, 0);
    let mut worst: f64 = 0.0;
    while accepted < 100 {
        drawn += 1;
        ensure(drawn < 100_000, || "could not draw 100 well-conditioned expressions".into())?;
        let e = random_expr(&mut rng, 4);
        let printed = e.to_string();
        let back = parse_unchecked(&printed).map_err(|err| format!("`{printed}` does not parse: {err}"))?;
        ensure(back == e, || format!("round trip changed `{printed}` into `{back}`"))?;

        let x = rng.gen_range(0.5..1.5);
        let d = differentiate(&e, "x");
        let env = Bindings::new().with("x", x);
        let (Ok(v), Ok(dv)) = (evaluate(&e, &env), evaluate(&d, &env)) else { continue };
        // well-conditioned samples only: moderate values and no domain edge nearby
        if !(v.abs() < 1e3 && dv.abs() < 1e3) {
            continue;
        }
        let dom = iv(x - 0.01, x + 0.01);
        let Ok(g) = ScalarField::from_expr(&e, "x", &Bindings::new(), dom) else { continue };
        let numeric = ScalarField::from_fn(dom, move |t| g.eval(t));
        let Ok(fd) = fd_derivative(&numeric, x) else { continue };
        let Ok(probe) = fd_derivative(&numeric, x + 1e-4) else { continue };
        if !probe.is_finite() {
            continue;
        }
        let err = (fd - dv).abs() / dv.abs().max(1.0);
        ensure(err <= 1e-6, || format!("d/dx `{printed}` at x={x}: symbolic {dv}, stencil {fd}"))?;
        worst = worst.max(err);
        accepted += 1;
    }
    Ok(format!("100 trees ({drawn} drawn), worst derivative mismatch {worst:.2e}"))
}

fn cli(args: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_riccati")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout, out.stderr)
}

fn cli_contract() -> Outcome {
    let (code, out, _) = cli(&["check", "--b", "2*x", "--c", "1", "--f", "0", "--interval", "0:2"]);
    let report: serde_json::Value = serde_json::from_slice(&out).map_err(|e| format!("check JSON: {e}"))?;
    ensure(code == 0 && report["pass"] == true, || format!("check exit {code}: {report}"))?;
    let r = report["max_residual"].as_f64().unwrap_or(f64::NAN);
    ensure(r <= 1e-10, || format!("check max_residual {r}"))?;

    let run_ex1 = ["catalog", "run", "ex1", "--param", "alpha=1", "--param", "beta=1", "--param", "m=1", "--param", "n=1", "--C", "2"];
    let (code, out, _) = cli(&run_ex1);
    let text = String::from_utf8(out.clone()).map_err(|e| e.to_string())?;
    ensure(code == 0, || format!("catalog run exit {code}"))?;
    ensure(text.starts_with("x,y\n") && text.lines().count() > 2, || "catalog run CSV".into())?;
    for line in text.lines().skip(1) {
        let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap_or(f64::NAN)).collect();
        ensure(cells.len() == 2 && cells.iter().all(|v| v.is_finite()), || format!("bad CSV row `{line}`"))?;
    }
    let (_, again, _) = cli(&run_ex1);
    ensure(again == out, || "catalog run CSV differs between runs".into())?;

    let osc = ["oscillator", "--case", "1", "--gamma", "2", "--x0", "1", "--v0", "0", "--interval", "0:5"];
    let (code, out, _) = cli(&osc);
    let text = String::from_utf8(out.clone()).map_err(|e| e.to_string())?;
    ensure(code == 0 && text.starts_with("t,x,u\n"), || format!("oscillator exit {code}"))?;
    let mut worst: f64 = 0.0;
    for line in text.lines().skip(1) {
        let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap_or(f64::NAN)).collect();
        worst = worst.max((cells[1] - (1.0 + cells[0]) * (-cells[0]).exp()).abs());
    }
    ensure(worst <= 1e-8, || format!("oscillator column x off by {worst:.3e}"))?;
    let (_, again, _) = cli(&osc);
    ensure(again == out, || "oscillator CSV differs between runs".into())?;

    let (code, _, _) = cli(&["check", "--b", "2*x +", "--c", "1", "--interval", "0:2"]);
    ensure(code == 2, || format!("malformed expression exit {code}"))?;
    let (code, _, _) = cli(&["catalog", "run", "ex10"]);
    ensure(code == 2, || format!("unknown catalog id exit {code}"))?;
    let (code, _, _) = cli(&["check", "--a", "x^2", "--b", "2*x", "--c", "1", "--interval", "0:2"]);
    ensure(code == 1, || format!("failing residual exit {code}"))?;
    Ok(format!("three invocations, error classes and determinism; oscillator error {worst:.2e}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("catalog soundness", catalog_soundness),
        ("theorem verification", theorem_verification),
        ("classical-condition equivalence", classical_equivalence),
        ("regime reductions", regime_reductions),
        ("randomized construction", randomized_construction),
        ("cross-ratio constancy", cross_ratio_constancy),
        ("oscillator closed forms", oscillator_closed_forms),
        ("oracle sanity", oracle_sanity),
        ("parser and derivatives", parser_and_derivatives),
        ("CLI contract", cli_contract),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}; {secs:.2} s)", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    if failures > 0 {
        println!("{failures} criterion(s) failed");
        std::process::exit(1);
    }
}
