//! Riccati equations `y' = a + b y + c y^2` that are integrable through a
//! generating function `f`.
//!
//! Fixing `b`, `c` and `f` forces `a` ([`construct_a`]) and gives the
//! particular solutions `(-b ± sqrt f) / (2c)` together with the general
//! solution
//!
//! ```text
//! y = E / (C - ∫ c E) + (-b ± sqrt f) / (2c),    E = exp(± ∫ sqrt f)
//! ```
//!
//! Fixing `a`, `b` and `f` instead forces `c` ([`construct_c`]). All
//! antiderivatives are anchored at the left end of the working interval.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{antiderivative, DerivativePath, Grid, Interval, ScalarField, DEFAULT_TABLE_TOL};
use crate::verify::detect_poles;

const SCAN_POINTS: usize = 2048;

/// Sign choice of the square root of `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Branch {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }

    pub fn both() -> [Branch; 2] {
        [Branch::Plus, Branch::Minus]
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        })
    }
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Branch> {
        match s {
            "plus" | "+" => Ok(Branch::Plus),
            "minus" | "-" => Ok(Branch::Minus),
            other => Err(Error::Parameter(format!("branch must be plus or minus, got `{other}`"))),
        }
    }
}

/// Generating function and branch.
#[derive(Debug, Clone)]
pub struct GeneratingSpec {
    pub f: ScalarField,
    pub branch: Branch,
}

impl GeneratingSpec {
    pub fn new(f: ScalarField, branch: Branch) -> Self {
        GeneratingSpec { f, branch }
    }

    /// `f ≡ 0`, where both branches coincide.
    pub fn zero(domain: Interval) -> Self {
        GeneratingSpec { f: ScalarField::constant(0.0, domain), branch: Branch::Plus }
    }

    /// `± sqrt(f)` for the selected branch.
    pub fn signed_root(&self) -> ScalarField {
        self.f.sqrt().scale(self.branch.sign())
    }

    pub fn with_branch(&self, branch: Branch) -> Self {
        GeneratingSpec { f: self.f.clone(), branch }
    }
}

/// The coefficients `(a, b, c)` on a common interval.
#[derive(Debug, Clone)]
pub struct RiccatiSystem {
    a: ScalarField,
    b: ScalarField,
    c: ScalarField,
    domain: Interval,
}

impl RiccatiSystem {
    /// Requires every coefficient to be defined on `domain` and `c` to stay
    /// away from zero on a dense scan.
    pub fn new(a: ScalarField, b: ScalarField, c: ScalarField, domain: Interval) -> Result<Self> {
        let sys = Self::allowing_vanishing_c(a, b, c, domain)?;
        require_nonvanishing(&sys.c, domain)?;
        Ok(sys)
    }

    /// No restriction on `c`; for linear and Bernoulli test equations that
    /// are only ever integrated numerically.
    pub fn allowing_vanishing_c(a: ScalarField, b: ScalarField, c: ScalarField, domain: Interval) -> Result<Self> {
        let (a, b, c) = (a.restrict(domain)?, b.restrict(domain)?, c.restrict(domain)?);
        for x in scan(domain, 64).points() {
            a.eval(*x)?;
            b.eval(*x)?;
            c.eval(*x)?;
        }
        Ok(RiccatiSystem { a, b, c, domain })
    }

    pub fn a(&self) -> &ScalarField {
        &self.a
    }

    pub fn b(&self) -> &ScalarField {
        &self.b
    }

    pub fn c(&self) -> &ScalarField {
        &self.c
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    /// `a(x) + b(x) y + c(x) y^2`.
    pub fn rhs(&self, x: f64, y: f64) -> Result<f64> {
        Ok(self.a.eval(x)? + y * (self.b.eval(x)? + self.c.eval(x)? * y))
    }

    /// Same coefficients on a sub-interval.
    pub fn restrict(&self, domain: Interval) -> Result<Self> {
        Ok(RiccatiSystem {
            a: self.a.restrict(domain)?,
            b: self.b.restrict(domain)?,
            c: self.c.restrict(domain)?,
            domain,
        })
    }
}

/// Integration constants of a family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    /// The constant `C` of the general solution.
    pub c: f64,
    /// The constant `k` of the fixed-`a` route.
    pub k: Option<f64>,
}

/// One-parameter family of solutions of an integrable system.
#[derive(Debug, Clone)]
pub struct SolutionFamily {
    system: RiccatiSystem,
    particular: ScalarField,
    growth: ScalarField,
    accumulated: ScalarField,
    branch: Branch,
    constants: Constants,
    poles: Vec<f64>,
}

impl SolutionFamily {
    fn assemble(system: RiccatiSystem, spec: &GeneratingSpec, particular: ScalarField, constants: Constants) -> Result<Self> {
        let dom = system.domain;
        let root = spec.signed_root().restrict(dom)?;
        let exponent = antiderivative(&root, dom.lo(), dom, DEFAULT_TABLE_TOL)?;
        let growth = exponent.exp();
        let accumulated = antiderivative(&system.c.mul(&growth)?, dom.lo(), dom, DEFAULT_TABLE_TOL)?;
        let mut family =
            SolutionFamily { system, particular, growth, accumulated, branch: spec.branch, constants, poles: vec![] };
        family.poles = detect_poles(&family.denominator(constants.c), dom)?;
        Ok(family)
    }

    pub fn system(&self) -> &RiccatiSystem {
        &self.system
    }

    pub fn domain(&self) -> Interval {
        self.system.domain
    }

    /// The particular solution (the `C -> ∞` member).
    pub fn particular(&self) -> &ScalarField {
        &self.particular
    }

    /// `E = exp(± ∫ sqrt f)`, equal to 1 at the left endpoint.
    pub fn growth(&self) -> &ScalarField {
        &self.growth
    }

    /// `Q = ∫ c E`, zero at the left endpoint.
    pub fn accumulated(&self) -> &ScalarField {
        &self.accumulated
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn constants(&self) -> Constants {
        self.constants
    }

    pub fn constant(&self) -> f64 {
        self.constants.c
    }

    /// Poles of the member at the family's own constant.
    pub fn poles(&self) -> &[f64] {
        &self.poles
    }

    /// `C - Q(x)`; the member `member(C)` has a pole wherever it vanishes.
    pub fn denominator(&self, constant: f64) -> ScalarField {
        self.accumulated.neg().shift(constant)
    }

    /// `y(x; C) = E / (C - Q) + y_p`.
    pub fn member(&self, constant: f64) -> ScalarField {
        let recip = self.growth.div(&self.denominator(constant)).expect("shared domain");
        recip.add(&self.particular).expect("shared domain")
    }

    /// The member at the family's own constant.
    pub fn general(&self) -> ScalarField {
        self.member(self.constants.c)
    }

    /// Same family, different `C`.
    pub fn with_constant(&self, constant: f64) -> Result<Self> {
        let mut next = self.clone();
        next.constants.c = constant;
        next.poles = detect_poles(&next.denominator(constant), self.domain())?;
        Ok(next)
    }

    /// The `C` for which `y(x0) = y0`.
    pub fn constant_for_initial_value(&self, x0: f64, y0: f64) -> Result<f64> {
        let gap = y0 - self.particular.eval(x0)?;
        if gap == 0.0 {
            return Err(Error::Degenerate(format!("y({x0}) = {y0} is the particular solution (C infinite)")));
        }
        Ok(self.accumulated.eval(x0)? + self.growth.eval(x0)? / gap)
    }
}

/// Pointwise residual of the constraint on `a`.
#[derive(Debug, Clone, Serialize)]
pub struct IntegrabilityReport {
    #[serde(skip)]
    pub grid: Grid,
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub path: DerivativePath,
}

/// Samples of `Δ = b² - 2b' - 4a`.
#[derive(Debug, Clone)]
pub struct DeltaReport {
    pub grid: Grid,
    pub delta: Vec<f64>,
    pub mean: f64,
    pub is_constant: bool,
    /// Set when `Δ` is constant and negative.
    pub non_real_roots: bool,
    /// `-(b ± sqrt Δ) / 2` when `Δ` is a non-negative constant.
    pub roots: Option<(ScalarField, ScalarField)>,
}

fn scan(domain: Interval, n: usize) -> Grid {
    Grid::uniform(domain, n).expect("scan size is valid")
}

fn working_domain(fields: &[&ScalarField]) -> Result<Interval> {
    let mut dom = fields[0].domain();
    for f in &fields[1..] {
        dom = dom
            .intersect(&f.domain())
            .map_err(|_| Error::Precondition("coefficient domains do not overlap".into()))?;
    }
    Ok(dom)
}

fn require_nonnegative(f: &ScalarField, domain: Interval) -> Result<()> {
    if let Some(v) = f.as_constant() {
        return if v >= 0.0 { Ok(()) } else { Err(Error::NegativeGenerating { x: domain.lo(), value: v }) };
    }
    for &x in scan(domain, SCAN_POINTS).points() {
        let value = f.eval(x)?;
        if value < 0.0 {
            return Err(Error::NegativeGenerating { x, value });
        }
    }
    Ok(())
}

/// First zero or sign change of `g` on a dense scan, refined by bisection.
fn first_zero(g: &ScalarField, domain: Interval) -> Result<Option<f64>> {
    if let Some(v) = g.as_constant() {
        return Ok((v == 0.0).then_some(domain.lo()));
    }
    let grid = scan(domain, SCAN_POINTS);
    let pts = grid.points();
    let mut prev = g.eval(pts[0])?;
    if prev == 0.0 {
        return Ok(Some(pts[0]));
    }
    for w in pts.windows(2) {
        let next = g.eval(w[1])?;
        if next == 0.0 {
            return Ok(Some(w[1]));
        }
        if (prev < 0.0) != (next < 0.0) {
            let (mut lo, mut hi) = (w[0], w[1]);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if (g.eval(mid)? < 0.0) == (prev < 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Ok(Some(0.5 * (lo + hi)));
        }
        prev = next;
    }
    Ok(None)
}

fn require_nonvanishing(c: &ScalarField, domain: Interval) -> Result<()> {
    match first_zero(c, domain)? {
        Some(x) => Err(Error::VanishingCoefficient { x }),
        None => Ok(()),
    }
}

fn check_bcf(b: &ScalarField, c: &ScalarField, spec: &GeneratingSpec) -> Result<Interval> {
    let dom = working_domain(&[b, c, &spec.f])?;
    require_nonvanishing(c, dom)?;
    require_nonnegative(&spec.f, dom)?;
    Ok(dom)
}

fn particular_unchecked(b: &ScalarField, c: &ScalarField, spec: &GeneratingSpec) -> Result<ScalarField> {
    spec.signed_root().sub(b)?.div(&c.scale(2.0))
}

fn construct_a_with_path(
    b: &ScalarField,
    c: &ScalarField,
    spec: &GeneratingSpec,
) -> Result<(ScalarField, DerivativePath)> {
    let dom = check_bcf(b, c, spec)?;
    let (slope, path) = particular_unchecked(b, c, spec)?.derivative();
    let rest = b.square().sub(&spec.f)?.div(&c.scale(4.0))?;
    Ok((slope.add(&rest)?.restrict(dom)?, path))
}

/// `a = d/dx[(-b ± sqrt f)/(2c)] + (b² - f)/(4c)`: the drive term for which
/// the selected particular solution exists.
pub fn construct_a(b: &ScalarField, c: &ScalarField, spec: &GeneratingSpec) -> Result<ScalarField> {
    construct_a_with_path(b, c, spec).map(|(a, _)| a)
}

/// `y_p = (-b ± sqrt f) / (2c)`.
pub fn particular_solution(b: &ScalarField, c: &ScalarField, spec: &GeneratingSpec) -> Result<ScalarField> {
    let dom = check_bcf(b, c, spec)?;
    particular_unchecked(b, c, spec)?.restrict(dom)
}

/// The general solution of the system `(construct_a(b, c, spec), b, c)`,
/// with constant `constant`.
pub fn general_solution(b: &ScalarField, c: &ScalarField, spec: &GeneratingSpec, constant: f64) -> Result<SolutionFamily> {
    let a = construct_a(b, c, spec)?;
    let dom = a.domain();
    let system = RiccatiSystem::new(a, b.clone(), c.clone(), dom)?;
    let particular = particular_unchecked(b, c, spec)?.restrict(dom)?;
    SolutionFamily::assemble(system, spec, particular, Constants { c: constant, k: None })
}

/// Family of an existing system whose coefficients already satisfy the
/// constraint for `spec` (see [`check_integrability`]); nothing is re-derived.
pub fn family_for_system(system: RiccatiSystem, spec: &GeneratingSpec, constant: f64) -> Result<SolutionFamily> {
    let dom = check_bcf(system.b(), system.c(), spec)?.intersect(&system.domain())?;
    let particular = particular_unchecked(system.b(), system.c(), spec)?.restrict(dom)?;
    let system = system.restrict(dom)?;
    SolutionFamily::assemble(system, spec, particular, Constants { c: constant, k: None })
}

/// Integrating factor `I = exp(-½ ∫ (b ± sqrt f))` and `k - ∫ a I` for the
/// fixed-`a` route.
fn fixed_a_parts(a: &ScalarField, b: &ScalarField, spec: &GeneratingSpec, k: f64) -> Result<(Interval, ScalarField, ScalarField)> {
    let dom = working_domain(&[a, b, &spec.f])?;
    require_nonnegative(&spec.f, dom)?;
    let root = spec.signed_root();
    let half_sum = b.add(&root)?.scale(-0.5).restrict(dom)?;
    let factor = antiderivative(&half_sum, dom.lo(), dom, DEFAULT_TABLE_TOL)?.exp();
    let weighted = antiderivative(&a.restrict(dom)?.mul(&factor)?, dom.lo(), dom, DEFAULT_TABLE_TOL)?;
    let denominator = weighted.neg().shift(k);
    if let Some(x) = first_zero(&denominator, dom)? {
        return Err(Error::DenominatorZero { x });
    }
    Ok((dom, factor, denominator))
}

/// `c = ½ I (b ∓ sqrt f) / (k - ∫ a I)` with `I = exp(-½ ∫ (b ± sqrt f))`,
/// the upper signs belonging to the plus branch. With this `c` the system
/// `(a, b, c)` has the particular solution `(-b ± sqrt f)/(2c) = -(k - ∫ a I)/I`.
pub fn construct_c(a: &ScalarField, b: &ScalarField, spec: &GeneratingSpec, k: f64) -> Result<ScalarField> {
    let (dom, factor, denominator) = fixed_a_parts(a, b, spec, k)?;
    let numerator = b.sub(&spec.signed_root())?.restrict(dom)?.mul(&factor)?.scale(0.5);
    let c = numerator.div(&denominator)?;
    require_nonvanishing(&c, dom)?;
    Ok(c)
}

/// General solution of `(a, construct_c(a, b, spec, k), b)`.
pub fn general_solution_fixed_a(
    a: &ScalarField,
    b: &ScalarField,
    spec: &GeneratingSpec,
    k: f64,
    constant: f64,
) -> Result<SolutionFamily> {
    let (dom, factor, denominator) = fixed_a_parts(a, b, spec, k)?;
    let numerator = b.sub(&spec.signed_root())?.restrict(dom)?.mul(&factor)?.scale(0.5);
    let c = numerator.div(&denominator)?;
    require_nonvanishing(&c, dom)?;
    let system = RiccatiSystem::new(a.restrict(dom)?, b.restrict(dom)?, c, dom)?;
    let particular = denominator.div(&factor)?.neg();
    SolutionFamily::assemble(system, spec, particular, Constants { c: constant, k: Some(k) })
}

/// Residual `a - construct_a(b, c, spec)` of an existing system on `grid`.
pub fn check_integrability(sys: &RiccatiSystem, spec: &GeneratingSpec, grid: &Grid, tol: f64) -> Result<IntegrabilityReport> {
    let (forced, path) = construct_a_with_path(sys.b(), sys.c(), spec)?;
    let mut residuals = Vec::with_capacity(grid.len());
    for &x in grid.points() {
        residuals.push(sys.a().eval(x)? - forced.eval(x)?);
    }
    let max_residual = residuals.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    Ok(IntegrabilityReport { grid: grid.clone(), residuals, max_residual, tolerance: tol, pass: max_residual <= tol, path })
}

/// The classical condition for `c ≡ 1`: `Δ = b² - 2b' - 4a` constant.
pub fn classical_delta(a: &ScalarField, b: &ScalarField, grid: &Grid) -> Result<DeltaReport> {
    let (db, _) = b.derivative();
    let mut delta = Vec::with_capacity(grid.len());
    for &x in grid.points() {
        let bv = b.eval(x)?;
        delta.push(bv * bv - 2.0 * db.eval(x)? - 4.0 * a.eval(x)?);
    }
    let mean = delta.iter().sum::<f64>() / delta.len() as f64;
    let (lo, hi) = delta.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &d| (l.min(d), h.max(d)));
    let is_constant = hi - lo <= 1e-9 * (1.0 + mean.abs());
    let non_real_roots = is_constant && mean < 0.0;
    let roots = if is_constant && mean >= 0.0 {
        let root = mean.sqrt();
        Some((b.shift(root).scale(-0.5), b.shift(-root).scale(-0.5)))
    } else {
        None
    };
    Ok(DeltaReport { grid: grid.clone(), delta, mean, is_constant, non_real_roots, roots })
}

/// `f = b² - 4c(a - y')`: the generating function under which `y` is the
/// particular solution.
pub fn infer_f(sys: &RiccatiSystem, y: &ScalarField) -> Result<ScalarField> {
    let (dy, _) = y.derivative();
    sys.b().square().sub(&sys.c().scale(4.0).mul(&sys.a().sub(&dy)?)?)
}
