//! Damped oscillators `x'' + γ(t) x' + ω²(t) x = 0` solved through the
//! Riccati equation for `u = x'/x`, and travelling-wave profiles that reduce
//! to them.
//!
//! Time is measured from the left end `t0` of the domain, where the initial
//! data `x(t0) = x0`, `x'(t0) = v0` are imposed and every antiderivative
//! vanishes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{antiderivative, DerivativePath, Grid, Interval, ScalarField, DEFAULT_TABLE_TOL};
use crate::riccati::{Branch, IntegrabilityReport, RiccatiSystem};
use crate::verify::{Dopri5, Trajectory};

/// `|K|` below which the constant-`f` case is treated as `f ≡ 0`.
const K_ZERO: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct OscillatorProblem {
    pub gamma: ScalarField,
    pub omega2: ScalarField,
    pub domain: Interval,
}

impl OscillatorProblem {
    pub fn new(gamma: ScalarField, omega2: ScalarField, domain: Interval) -> Result<Self> {
        Ok(OscillatorProblem { gamma: gamma.restrict(domain)?, omega2: omega2.restrict(domain)?, domain })
    }
}

/// Which constraint between `γ` and `ω²` is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    /// `ω² = γ'/2 + γ²/4`
    Case1,
    /// `ω² = γ'/2 + (γ² - K²)/4`
    Case2,
    /// `ω² = d/dt[(γ ± sqrt f)/2] + (γ² - f)/4`
    Case3,
}

impl Case {
    pub fn from_number(n: u32) -> Result<Case> {
        match n {
            1 => Ok(Case::Case1),
            2 => Ok(Case::Case2),
            3 => Ok(Case::Case3),
            other => Err(Error::Parameter(format!("case must be 1, 2 or 3, got {other}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OscillatorConstants {
    /// `C`; absent when it is infinite.
    pub c: Option<f64>,
    pub k: Option<f64>,
    pub gamma0: f64,
    pub f0: Option<f64>,
    /// `F(t0)` and `G(t0)`, zero by anchoring.
    pub big_f0: f64,
    pub g0: f64,
}

#[derive(Debug, Clone)]
pub struct OscillatorSolution {
    pub case: Case,
    pub branch: Option<Branch>,
    /// Position.
    pub x: ScalarField,
    /// `x'/x`, singular at zeros of `x`.
    pub u: ScalarField,
    /// The `ω²` forced by the case condition.
    pub omega2: ScalarField,
    pub gamma: ScalarField,
    pub constants: OscillatorConstants,
    pub x0: f64,
    pub v0: f64,
    /// Set when `C` is infinite and the limiting solution was returned.
    pub degenerate: bool,
    pub notes: Vec<String>,
}

/// `u' = -ω² - γ u - u²`.
pub fn reduce_to_riccati(p: &OscillatorProblem) -> Result<RiccatiSystem> {
    let c = ScalarField::constant(-1.0, p.domain);
    RiccatiSystem::new(p.omega2.neg(), p.gamma.neg(), c, p.domain)
}

fn elapsed(dom: Interval) -> ScalarField {
    let t0 = dom.lo();
    ScalarField::from_fn(dom, move |t| Ok(t - t0))
}

fn half_damping_integral(gamma: &ScalarField, dom: Interval) -> Result<ScalarField> {
    Ok(antiderivative(&gamma.restrict(dom)?, dom.lo(), dom, DEFAULT_TABLE_TOL)?.scale(-0.5))
}

/// `d/dt[(γ + s sqrt f)/2] + (γ² - f)/4`.
fn condition_rhs(gamma: &ScalarField, f: &ScalarField, sign: f64) -> Result<(ScalarField, DerivativePath)> {
    let half = gamma.add(&f.sqrt().scale(sign))?.scale(0.5);
    let (slope, path) = half.derivative();
    Ok((slope.add(&gamma.square().sub(f)?.scale(0.25))?, path))
}

fn require_x0(x0: f64) -> Result<()> {
    if x0 == 0.0 || !x0.is_finite() {
        return Err(Error::Degenerate("x0 must be finite and non-zero for u = x'/x".into()));
    }
    Ok(())
}

/// Solution under `ω² = γ'/2 + γ²/4`: `x = x0 (1 + τ/C) exp(-½∫γ)` with
/// `C = 2 x0 / (2 v0 + γ0 x0)`. When `2 v0 + γ0 x0 = 0` the constant is
/// infinite and `x = x0 exp(-½∫γ)` is returned, flagged as degenerate.
pub fn case1(gamma: &ScalarField, x0: f64, v0: f64, dom: Interval) -> Result<OscillatorSolution> {
    require_x0(x0)?;
    let gamma = gamma.restrict(dom)?;
    let gamma0 = gamma.eval(dom.lo())?;
    let damping = half_damping_integral(&gamma, dom)?.exp();
    let (omega2, _) = condition_rhs(&gamma, &ScalarField::constant(0.0, dom), 1.0)?;
    let tau = elapsed(dom);
    let denom = 2.0 * v0 + gamma0 * x0;
    let half_gamma = gamma.scale(-0.5);
    let (x, u, c, degenerate, notes) = if denom == 0.0 {
        let note = "2 v0 + gamma0 x0 = 0: C is infinite, returned the limiting solution x0 exp(-1/2 ∫gamma)";
        (damping.scale(x0), half_gamma, None, true, vec![note.to_string()])
    } else {
        let c = 2.0 * x0 / denom;
        let x = tau.scale(1.0 / c).shift(1.0).mul(&damping)?.scale(x0);
        let u = half_gamma.add(&tau.shift(c).recip())?;
        (x, u, Some(c), false, vec![])
    };
    Ok(OscillatorSolution {
        case: Case::Case1,
        branch: None,
        x,
        u,
        omega2,
        gamma,
        constants: OscillatorConstants { c, k: None, gamma0, f0: None, big_f0: 0.0, g0: 0.0 },
        x0,
        v0,
        degenerate,
        notes,
    })
}

/// Solution under `ω² = γ'/2 + (γ² - K²)/4`:
/// `x = x0/(C ± 1/K) exp(-½∫γ) (C e^{∓Kτ/2} ± K⁻¹ e^{±Kτ/2})` with
/// `C = 2 x0/(2 v0 + (γ0 ± K) x0) ∓ 1/K`. Negative `K` is replaced by `|K|`
/// with the branch flipped; `|K| < 1e-10` falls back to [`case1`].
pub fn case2(gamma: &ScalarField, k: f64, x0: f64, v0: f64, branch: Branch, dom: Interval) -> Result<OscillatorSolution> {
    require_x0(x0)?;
    if !k.is_finite() {
        return Err(Error::Parameter(format!("K must be finite, got {k}")));
    }
    if k.abs() < K_ZERO {
        let mut sol = case1(gamma, x0, v0, dom)?;
        sol.notes.push(format!("|K| = {:e} treated as 0: case 1 solution", k.abs()));
        return Ok(sol);
    }
    let (k, branch) = if k < 0.0 { (-k, branch.flipped()) } else { (k, branch) };
    let s = branch.sign();
    let gamma = gamma.restrict(dom)?;
    let gamma0 = gamma.eval(dom.lo())?;
    let rate = 2.0 * v0 + (gamma0 + s * k) * x0;
    if rate == 0.0 {
        return Err(Error::Degenerate(format!("2 v0 + (gamma0 {} K) x0 vanishes", if s > 0.0 { "+" } else { "-" })));
    }
    let shifted = 2.0 * x0 / rate;
    let c = shifted - s / k;
    let kf = ScalarField::constant(k * k, dom);
    let (omega2, _) = condition_rhs(&gamma, &kf, s)?;
    let tau = elapsed(dom);
    let damping = half_damping_integral(&gamma, dom)?.exp();
    let decay = tau.scale(-s * k / 2.0).exp();
    let rise = tau.scale(s * k / 2.0).exp();
    let x = decay.scale(c).add(&rise.scale(s / k))?.mul(&damping)?.scale(x0 / shifted);
    let growth = tau.scale(s * k).exp();
    let u = growth.div(&growth.scale(s / k).shift(c))?.add(&gamma.shift(s * k).scale(-0.5))?;
    Ok(OscillatorSolution {
        case: Case::Case2,
        branch: Some(branch),
        x,
        u,
        omega2,
        gamma,
        constants: OscillatorConstants { c: Some(c), k: Some(k), gamma0, f0: Some(k * k), big_f0: 0.0, g0: 0.0 },
        x0,
        v0,
        degenerate: false,
        notes: vec![],
    })
}

/// Solution under `ω² = d/dt[(γ ± sqrt f)/2] + (γ² - f)/4`, with
/// `F = ∫ sqrt f`, `H = ∫ e^{±F}` (both zero at `t0`):
/// `u = e^{±F}/(C + H) - (γ ± sqrt f)/2`, `x = x0 (C + H)/C exp(-½(∫γ ± F))`,
/// `C = (v0/x0 + (γ0 ± sqrt f0)/2)^{-1}`.
pub fn case3(
    gamma: &ScalarField,
    f: &ScalarField,
    x0: f64,
    v0: f64,
    branch: Branch,
    dom: Interval,
) -> Result<OscillatorSolution> {
    require_x0(x0)?;
    let gamma = gamma.restrict(dom)?;
    let f = f.restrict(dom)?;
    for &t in Grid::uniform(dom, 2048)?.points() {
        let value = f.eval(t)?;
        if value < 0.0 {
            return Err(Error::NegativeGenerating { x: t, value });
        }
    }
    let s = branch.sign();
    let gamma0 = gamma.eval(dom.lo())?;
    let f0 = f.eval(dom.lo())?;
    let rate = v0 / x0 + (gamma0 + s * f0.sqrt()) / 2.0;
    if rate == 0.0 {
        return Err(Error::Degenerate("v0/x0 + (gamma0 ± sqrt f0)/2 vanishes: C is infinite".into()));
    }
    let c = 1.0 / rate;
    let root = f.sqrt().scale(s);
    let big_f = antiderivative(&root, dom.lo(), dom, DEFAULT_TABLE_TOL)?;
    let growth = big_f.exp();
    let h = antiderivative(&growth, dom.lo(), dom, DEFAULT_TABLE_TOL)?;
    let (omega2, _) = condition_rhs(&gamma, &f, s)?;
    let gamma_int = antiderivative(&gamma, dom.lo(), dom, DEFAULT_TABLE_TOL)?;
    let envelope = gamma_int.add(&big_f)?.scale(-0.5).exp();
    let x = h.shift(c).mul(&envelope)?.scale(x0 / c);
    let u = growth.div(&h.shift(c))?.sub(&gamma.add(&root)?.scale(0.5))?;
    Ok(OscillatorSolution {
        case: Case::Case3,
        branch: Some(branch),
        x,
        u,
        omega2,
        gamma,
        constants: OscillatorConstants { c: Some(c), k: None, gamma0, f0: Some(f0), big_f0: 0.0, g0: 0.0 },
        x0,
        v0,
        degenerate: false,
        notes: vec![],
    })
}

/// Extra data a case needs.
#[derive(Debug, Clone, Default)]
pub struct ConditionSpec {
    pub k: Option<f64>,
    pub f: Option<ScalarField>,
    pub branch: Option<Branch>,
}

/// Residual `ω² - (condition right-hand side)` on `grid`.
pub fn check_condition(p: &OscillatorProblem, case: Case, extra: &ConditionSpec, grid: &Grid, tol: f64) -> Result<IntegrabilityReport> {
    let sign = extra.branch.unwrap_or(Branch::Plus).sign();
    let f = match case {
        Case::Case1 => ScalarField::constant(0.0, p.domain),
        Case::Case2 => {
            let k = extra.k.ok_or_else(|| Error::Parameter("case 2 needs K".into()))?;
            ScalarField::constant(k * k, p.domain)
        }
        Case::Case3 => extra.f.clone().ok_or_else(|| Error::Parameter("case 3 needs f".into()))?,
    };
    let (rhs, path) = condition_rhs(&p.gamma, &f, sign)?;
    let mut residuals = Vec::with_capacity(grid.len());
    for &t in grid.points() {
        residuals.push(p.omega2.eval(t)? - rhs.eval(t)?);
    }
    let max_residual = residuals.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    Ok(IntegrabilityReport { grid: grid.clone(), residuals, max_residual, tolerance: tol, pass: max_residual <= tol, path })
}

/// Solves the case selected by `case`/`extra` for problem data.
pub fn solve(p: &OscillatorProblem, case: Case, extra: &ConditionSpec, x0: f64, v0: f64) -> Result<OscillatorSolution> {
    let branch = extra.branch.unwrap_or(Branch::Plus);
    match case {
        Case::Case1 => case1(&p.gamma, x0, v0, p.domain),
        Case::Case2 => {
            let k = extra.k.ok_or_else(|| Error::Parameter("case 2 needs K".into()))?;
            case2(&p.gamma, k, x0, v0, branch, p.domain)
        }
        Case::Case3 => {
            let f = extra.f.as_ref().ok_or_else(|| Error::Parameter("case 3 needs f".into()))?;
            case3(&p.gamma, f, x0, v0, branch, p.domain)
        }
    }
}

/// Dormand-Prince integration of `(x, x')` from the initial data.
pub fn rk_oscillator(gamma: &ScalarField, omega2: &ScalarField, x0: f64, v0: f64, dom: Interval, tol: f64) -> Result<Trajectory<2>> {
    Dopri5::new(tol).integrate(
        |t, y: &[f64; 2]| Ok([y[1], -gamma.eval(t)? * y[1] - omega2.eval(t)? * y[0]]),
        dom.lo(),
        [x0, v0],
        dom.hi(),
    )
}

/// `b Ψ'' + a Ψ' + V Ψ = 0` in `ξ = v t - x`.
#[derive(Debug, Clone)]
pub struct SolitonProblem {
    pub a: ScalarField,
    pub b: ScalarField,
    pub potential: ScalarField,
    pub speed: f64,
    pub domain: Interval,
}

/// Divides by `b` to get `γ = a/b`, `ω² = V/b`, checks the case condition
/// (to 1e-8) and returns the oscillator solution in `ξ`; its `x` is `Ψ`.
pub fn soliton_profile(p: &SolitonProblem, psi0: f64, dpsi0: f64, case: Case, extra: &ConditionSpec) -> Result<OscillatorSolution> {
    let dom = p.domain;
    let b = p.b.restrict(dom)?;
    let pts = Grid::uniform(dom, 2048)?;
    let samples = b.sample(&pts)?;
    if let Some(i) = samples.iter().position(|&v| v == 0.0) {
        return Err(Error::VanishingCoefficient { x: pts.points()[i] });
    }
    if let Some(i) = samples.windows(2).position(|w| (w[0] < 0.0) != (w[1] < 0.0)) {
        return Err(Error::VanishingCoefficient { x: pts.points()[i] });
    }
    let gamma = p.a.restrict(dom)?.div(&b)?;
    let omega2 = p.potential.restrict(dom)?.div(&b)?;
    let problem = OscillatorProblem::new(gamma, omega2, dom)?;
    let report = check_condition(&problem, case, extra, &Grid::uniform(dom, 512)?, 1e-8)?;
    if !report.pass {
        return Err(Error::Precondition(format!(
            "gamma = a/b and omega2 = V/b violate the {case:?} condition (max residual {:.3e})",
            report.max_residual
        )));
    }
    let mut sol = solve(&problem, case, extra, psi0, dpsi0)?;
    sol.notes.push(format!("profile in xi = {} t - x", p.speed));
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Bindings;
    use crate::numerics::{fd_derivative, fd_second_derivative};
    use crate::riccati::{general_solution, GeneratingSpec};
    use crate::verify::residual;
    use rand::{Rng, SeedableRng};

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn field(src: &str, dom: Interval) -> ScalarField {
        ScalarField::parse(src, "t", &Bindings::new(), dom).unwrap()
    }

    fn second_order_residual(sol: &OscillatorSolution, dom: Interval) -> f64 {
        let grid = Grid::uniform(dom, 200).unwrap();
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 1.0;
        for &t in grid.points() {
            let x = sol.x.eval(t).unwrap();
            let r = fd_second_derivative(&sol.x, t).unwrap()
                + sol.gamma.eval(t).unwrap() * fd_derivative(&sol.x, t).unwrap()
                + sol.omega2.eval(t).unwrap() * x;
            worst = worst.max(r.abs());
            scale = scale.max(x.abs());
        }
        worst / scale
    }

    #[test]
    fn reduction_coefficients() {
        let dom = iv(0.0, 1.0);
        let p = OscillatorProblem::new(field("2", dom), field("1", dom), dom).unwrap();
        let sys = reduce_to_riccati(&p).unwrap();
        assert_eq!(
            (sys.a().eval(0.5).unwrap(), sys.b().eval(0.5).unwrap(), sys.c().eval(0.5).unwrap()),
            (-1.0, -2.0, -1.0)
        );
    }

    #[test]
    fn critical_damping() {
        let dom = iv(0.0, 5.0);
        let sol = case1(&field("2", dom), 1.0, 0.0, dom).unwrap();
        assert_eq!(sol.constants.c, Some(1.0));
        for &t in Grid::uniform(dom, 100).unwrap().points() {
            assert!((sol.x.eval(t).unwrap() - (1.0 + t) * (-t).exp()).abs() < 1e-12);
            assert!((sol.omega2.eval(t).unwrap() - 1.0).abs() < 1e-15);
        }
        assert!(second_order_residual(&sol, dom) < 1e-7);
    }

    #[test]
    fn free_particle_and_degenerate_constant() {
        let dom = iv(0.0, 2.0);
        let sol = case1(&field("0", dom), 1.0, 1.0, dom).unwrap();
        assert!((sol.x.eval(1.5).unwrap() - 2.5).abs() < 1e-14);
        let flat = case1(&field("2", dom), 1.0, -1.0, dom).unwrap();
        assert!(flat.degenerate && flat.constants.c.is_none());
        assert!((flat.x.eval(1.0).unwrap() - (-1f64).exp()).abs() < 1e-14);
        assert!(second_order_residual(&flat, dom) < 1e-7);
    }

    #[test]
    fn linear_damping_against_rk() {
        let dom = iv(0.0, 3.0);
        let gamma = field("t", dom);
        let sol = case1(&gamma, 1.0, 0.5, dom).unwrap();
        let c = sol.constants.c.unwrap();
        for &t in Grid::uniform(dom, 60).unwrap().points() {
            let expect = (1.0 + t / c) * (-t * t / 4.0).exp();
            assert!((sol.x.eval(t).unwrap() - expect).abs() < 1e-9);
        }
        let traj = rk_oscillator(&gamma, &sol.omega2, 1.0, 0.5, dom, 1e-12).unwrap();
        for (t, y) in traj.xs.iter().zip(&traj.ys) {
            assert!((y[0] - sol.x.eval(*t).unwrap()).abs() < 1e-6);
        }
    }

    #[test]
    fn anti_restoring_constant_case() {
        let dom = iv(0.0, 3.0);
        let (x0, v0) = (0.7, -0.2);
        for branch in Branch::both() {
            let sol = case2(&field("0", dom), 2.0, x0, v0, branch, dom).unwrap();
            for &t in Grid::uniform(dom, 60).unwrap().points() {
                let expect = x0 * t.cosh() + v0 * t.sinh();
                assert!((sol.x.eval(t).unwrap() - expect).abs() < 1e-10, "{branch} t={t}");
                assert!((sol.omega2.eval(t).unwrap() + 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn overdamped_constant_case() {
        // x'' + 3x' + 2x = 0: x = (2x0 + v0) e^{-t} - (x0 + v0) e^{-2t}
        let dom = iv(0.0, 4.0);
        let sol = case2(&field("3", dom), 1.0, 1.0, 0.3, Branch::Plus, dom).unwrap();
        for &t in Grid::uniform(dom, 40).unwrap().points() {
            let expect = 2.3 * (-t).exp() - 1.3 * (-2.0 * t).exp();
            assert!((sol.x.eval(t).unwrap() - expect).abs() < 1e-12);
        }
        let traj = rk_oscillator(&sol.gamma, &sol.omega2, 1.0, 0.3, dom, 1e-12).unwrap();
        for (t, y) in traj.xs.iter().zip(&traj.ys) {
            assert!((y[0] - sol.x.eval(*t).unwrap()).abs() < 1e-6);
        }
    }

    #[test]
    fn negative_and_tiny_k() {
        let dom = iv(0.0, 1.0);
        let gamma = field("1 + t", dom);
        let a = case2(&gamma, -1.5, 1.0, 0.0, Branch::Plus, dom).unwrap();
        let b = case2(&gamma, 1.5, 1.0, 0.0, Branch::Minus, dom).unwrap();
        assert_eq!(a.branch, Some(Branch::Minus));
        assert_eq!(a.constants.k, Some(1.5));
        for &t in Grid::uniform(dom, 20).unwrap().points() {
            assert_eq!(a.x.eval(t).unwrap(), b.x.eval(t).unwrap());
        }
        let tiny = case2(&gamma, 1e-12, 1.0, 0.0, Branch::Plus, dom).unwrap();
        assert_eq!(tiny.case, Case::Case1);
        let err = case2(&field("0", dom), 2.0, 1.0, -1.0, Branch::Plus, dom).unwrap_err();
        assert!(matches!(err, Error::Degenerate(_)));
    }

    #[test]
    fn initial_data_reproduced() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let dom = iv(0.0, 1.0);
        for _ in 0..20 {
            let x0 = rng.gen_range(0.2..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let v0 = rng.gen_range(-2.0..2.0);
            let g0 = rng.gen_range(-1.0..2.0);
            let k = rng.gen_range(0.1..3.0);
            let gamma = field(&format!("{g0} + 0.5*sin(t)"), dom);
            let f = field("1/(1 + t)^2 + 0.25", dom);
            let sols = [
                case1(&gamma, x0, v0, dom),
                case2(&gamma, k, x0, v0, Branch::Plus, dom),
                case2(&gamma, k, x0, v0, Branch::Minus, dom),
                case3(&gamma, &f, x0, v0, Branch::Plus, dom),
                case3(&gamma, &f, x0, v0, Branch::Minus, dom),
            ];
            for sol in sols {
                let sol = match sol {
                    Ok(s) => s,
                    Err(Error::Degenerate(_)) => continue,
                    Err(e) => panic!("{e}"),
                };
                assert!((sol.x.eval(0.0).unwrap() - x0).abs() <= 1e-10);
                if !sol.degenerate {
                    assert!((fd_derivative(&sol.x, 0.0).unwrap() - v0).abs() <= 1e-8, "{:?}", sol.case);
                }
            }
        }
    }

    #[test]
    fn euler_equation_instance() {
        // γ = 0, f = (1+t)^-2: x'' = (3/4)(1+t)^-2 x
        let dom = iv(0.0, 4.0);
        let (x0, v0) = (1.0, 0.2);
        let sol = case3(&field("0", dom), &field("(1+t)^(-2)", dom), x0, v0, Branch::Plus, dom).unwrap();
        let big_a = (v0 + 0.5 * x0) / 2.0;
        let big_b = x0 - big_a;
        for &t in Grid::uniform(dom, 80).unwrap().points() {
            let expect = big_a * (1.0 + t).powf(1.5) + big_b / (1.0 + t).sqrt();
            assert!((sol.x.eval(t).unwrap() - expect).abs() < 1e-9, "t={t}");
            assert!((sol.omega2.eval(t).unwrap() + 0.75 / (1.0 + t).powi(2)).abs() < 1e-12);
        }
        let traj = rk_oscillator(&sol.gamma, &sol.omega2, x0, v0, dom, 1e-12).unwrap();
        for (t, y) in traj.xs.iter().zip(&traj.ys) {
            assert!((y[0] - sol.x.eval(*t).unwrap()).abs() < 1e-6);
        }
        assert!(second_order_residual(&sol, dom) < 1e-7);
    }

    #[test]
    fn nesting_of_cases() {
        let dom = iv(0.0, 3.0);
        let gamma = field("1", dom);
        let c1 = case1(&gamma, 1.0, 0.4, dom).unwrap();
        let c3 = case3(&gamma, &field("0", dom), 1.0, 0.4, Branch::Plus, dom).unwrap();
        for branch in Branch::both() {
            let c2 = case2(&gamma, 1.0, 1.0, 0.4, branch, dom).unwrap();
            let c3k = case3(&gamma, &field("1", dom), 1.0, 0.4, branch, dom).unwrap();
            for &t in Grid::uniform(dom, 60).unwrap().points() {
                assert!((c2.x.eval(t).unwrap() - c3k.x.eval(t).unwrap()).abs() <= 1e-8);
            }
        }
        for &t in Grid::uniform(dom, 60).unwrap().points() {
            assert!((c1.x.eval(t).unwrap() - c3.x.eval(t).unwrap()).abs() <= 1e-9);
        }
    }

    #[test]
    fn case_three_agrees_with_general_riccati_solution() {
        // with b = -γ and c = -1 the Riccati family's -∫cE becomes +∫E
        let dom = iv(0.0, 2.0);
        let gamma = field("0.5 + 0.3*t", dom);
        let f = field("exp(-t)", dom);
        for branch in Branch::both() {
            let sol = case3(&gamma, &f, 1.0, 0.3, branch, dom).unwrap();
            let spec = GeneratingSpec::new(f.clone(), branch);
            let fam = general_solution(&gamma.neg(), &ScalarField::constant(-1.0, dom), &spec, sol.constants.c.unwrap())
                .unwrap();
            let grid = Grid::uniform(dom, 100).unwrap().avoiding(fam.poles(), 0.05).unwrap();
            for &t in grid.points() {
                assert!((fam.general().eval(t).unwrap() - sol.u.eval(t).unwrap()).abs() < 1e-9);
                let a = fam.system().a().eval(t).unwrap();
                assert!((a + sol.omega2.eval(t).unwrap()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn velocity_ratio_solves_the_riccati_equation() {
        let dom = iv(0.0, 2.0);
        let gamma = field("1 + 0.2*t^2", dom);
        let sol = case3(&gamma, &field("1 + t", dom), 1.0, 0.3, Branch::Minus, dom).unwrap();
        let p = OscillatorProblem::new(gamma, sol.omega2.clone(), dom).unwrap();
        let sys = reduce_to_riccati(&p).unwrap();
        let zeros = crate::verify::detect_poles(&sol.x, dom).unwrap();
        let grid = Grid::uniform(dom, 100).unwrap().avoiding(&zeros, 0.05).unwrap();
        assert!(residual(&sol.u, &sys, &grid).unwrap().passes(1e-7));
    }

    #[test]
    fn conditions() {
        let dom = iv(0.0, 1.0);
        let grid = Grid::uniform(dom, 32).unwrap();
        let crit = OscillatorProblem::new(field("2", dom), field("1", dom), dom).unwrap();
        let r = check_condition(&crit, Case::Case1, &ConditionSpec::default(), &grid, 1e-12).unwrap();
        assert!(r.pass && r.max_residual == 0.0);
        let off = OscillatorProblem::new(field("2", dom), field("1.5", dom), dom).unwrap();
        let r = check_condition(&off, Case::Case1, &ConditionSpec::default(), &grid, 1e-12).unwrap();
        assert!(!r.pass && (r.max_residual - 0.5).abs() < 1e-15);
        let anti = OscillatorProblem::new(field("0", dom), field("-1", dom), dom).unwrap();
        let spec = ConditionSpec { k: Some(2.0), ..ConditionSpec::default() };
        assert!(check_condition(&anti, Case::Case2, &spec, &grid, 1e-12).unwrap().pass);
        assert!(check_condition(&anti, Case::Case2, &ConditionSpec::default(), &grid, 1e-12).is_err());
    }

    #[test]
    fn soliton_profiles() {
        let dom = iv(0.0, 3.0);
        let crit = SolitonProblem {
            a: field("4", dom),
            b: field("2", dom),
            potential: field("2", dom),
            speed: 1.0,
            domain: dom,
        };
        let sol = soliton_profile(&crit, 1.0, 0.0, Case::Case1, &ConditionSpec::default()).unwrap();
        for &xi in Grid::uniform(dom, 30).unwrap().points() {
            assert!((sol.x.eval(xi).unwrap() - (1.0 + xi) * (-xi).exp()).abs() < 1e-12);
        }
        let wave = SolitonProblem {
            a: field("0", dom),
            b: field("1", dom),
            potential: field("-1", dom),
            speed: 2.0,
            domain: dom,
        };
        let spec = ConditionSpec { k: Some(2.0), branch: Some(Branch::Minus), ..ConditionSpec::default() };
        // decaying tail: Ψ(0) = 1, Ψ'(0) = -1 selects e^{-ξ}, degenerate on the plus branch
        let sol = soliton_profile(&wave, 1.0, -1.0, Case::Case2, &spec).unwrap();
        for &xi in Grid::uniform(dom, 30).unwrap().points() {
            assert!((sol.x.eval(xi).unwrap() - (-xi).exp()).abs() < 1e-12);
        }
        let broken = SolitonProblem { b: field("t - 1", dom), ..wave };
        assert!(matches!(
            soliton_profile(&broken, 1.0, 0.0, Case::Case2, &spec),
            Err(Error::VanishingCoefficient { .. })
        ));
    }
}
