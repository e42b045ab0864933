//! Nine worked equations, instantiable with their parameters.
//!
//! Entries `ex1`..`ex6` fix `b`, `c` and `f` and force `a`; entries
//! `ex7`..`ex9` fix `a`, `b` and `f` and force `c`. Every entry carries the
//! closed form of its forced coefficient so the construction can be compared
//! against it. In those closed forms the symbol `s` stands for the branch
//! sign (`+1` or `-1`).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::Bindings;
use crate::numerics::{antiderivative, Grid, Interval, ScalarField, DEFAULT_TABLE_TOL};
use crate::riccati::{self, Branch, GeneratingSpec, IntegrabilityReport, RiccatiSystem, SolutionFamily};

/// Which coefficients an entry fixes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// `b`, `c`, `f` given; `a` constructed.
    FixBcf,
    /// `a`, `b`, `f` given; `c` constructed.
    FixAbf,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: f64,
    pub constraint: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub title: &'static str,
    pub route: Route,
    pub params: &'static [ParamSpec],
    /// Given coefficients; the forced one is `None`.
    pub a: Option<&'static str>,
    pub b: &'static str,
    pub c: Option<&'static str>,
    pub f: &'static str,
    /// Closed form of the forced coefficient.
    pub forced: &'static str,
    /// Branches for which `forced` holds.
    pub forced_branches: &'static [Branch],
    pub branch: Branch,
    pub interval: (f64, f64),
    pub general_solution: &'static str,
    pub notes: &'static [&'static str],
}

const fn p(name: &'static str, default: f64) -> ParamSpec {
    ParamSpec { name, default, constraint: "real" }
}

const BOTH: &[Branch] = &[Branch::Plus, Branch::Minus];
const PLUS: &[Branch] = &[Branch::Plus];

static ENTRIES: [CatalogEntry; 9] = [
    CatalogEntry {
        id: "ex1",
        title: "exponential-power coefficients, f = 0",
        route: Route::FixBcf,
        params: &[p("alpha", 1.0), p("beta", 1.0), p("m", 1.0), p("n", 1.0)],
        a: None,
        b: "exp(beta*x)*x^m",
        c: Some("exp(alpha*x)*x^n"),
        f: "0",
        forced: "(1/4)*exp((beta-alpha)*x)*x^(m-n-1)*(-2*m+2*n+x*(exp(beta*x)*x^m+2*alpha-2*beta))",
        forced_branches: BOTH,
        branch: Branch::Plus,
        interval: (0.5, 3.0),
        general_solution: "1/(C - ∫c) - (1/2) e^{(β-α)x} x^{m-n}; the integral is an upper incomplete gamma function",
        notes: &["x^(m-n-1) requires x > 0"],
    },
    CatalogEntry {
        id: "ex2",
        title: "Bessel coefficients, f = 0",
        route: Route::FixBcf,
        params: &[
            ParamSpec { name: "alpha", default: 0.0, constraint: "real" },
            ParamSpec { name: "beta", default: 0.0, constraint: "real" },
            ParamSpec { name: "m", default: 0.0, constraint: "integer >= 0" },
            ParamSpec { name: "n", default: 1.0, constraint: "integer >= 0" },
        ],
        a: None,
        b: "x^beta*{Jn}",
        c: Some("x^alpha*{Jm}"),
        f: "0",
        forced: "x^(-alpha+beta-1)*(2*x*{Jm1}*{Jn}+{Jm}*(2*(-m+n+alpha-beta)*{Jn}+x*(x^beta*{Jn}^2-2*{Jn1})))/(4*{Jm}^2)",
        forced_branches: BOTH,
        branch: Branch::Plus,
        interval: (0.5, 2.0),
        general_solution: "1/(C - ∫c) - x^{β-α} J_n/(2 J_m); the integral is a regularized 1F2 hypergeometric function",
        notes: &[
            "{Jk} denotes besselj(k, x); J_{-k} = (-1)^k J_k",
            "the interval must avoid zeros of J_m",
        ],
    },
    CatalogEntry {
        id: "ex3",
        title: "exponential-power coefficients, f = K^2",
        route: Route::FixBcf,
        params: &[p("alpha", 1.0), p("beta", 1.0), p("m", 1.0), p("n", 1.0), p("K", 1.0)],
        a: None,
        b: "exp(beta*x)*x^m",
        c: Some("exp(alpha*x)*x^n"),
        f: "K^2",
        forced: "(1/4)*exp(-alpha*x)*x^(-n-1)*(exp(beta*x)*x^m*(-2*m+2*n+x*(exp(beta*x)*x^m+2*alpha-2*beta))-K^2*x-s*2*K*(n+alpha*x))",
        forced_branches: BOTH,
        branch: Branch::Plus,
        interval: (0.5, 3.0),
        general_solution: "e^{±Kx}/(C - ∫c e^{±Kx}) + (±K - b)/(2c); the integral is an upper incomplete gamma function",
        notes: &[],
    },
    CatalogEntry {
        id: "ex4",
        title: "trigonometric coefficients, f = K^2",
        route: Route::FixBcf,
        params: &[p("alpha", 1.0), p("beta", 1.0), p("m", 1.0), p("n", 1.0), p("K", 1.0)],
        a: None,
        b: "exp(beta*x)*sin(m*x)",
        c: Some("exp(alpha*x)*sin(n*x)"),
        f: "K^2",
        forced: "(1/4)*exp(-alpha*x)/sin(n*x)*(exp(beta*x)*(sin(m*x)*(2*alpha-2*beta+2*n*cos(n*x)/sin(n*x)+exp(beta*x)*sin(m*x))-2*m*cos(m*x))-s*K*(s*K+2*alpha+2*n*cos(n*x)/sin(n*x)))",
        forced_branches: BOTH,
        branch: Branch::Plus,
        interval: (0.2, 1.2),
        general_solution: "e^{±Kx}/(C - ∫c e^{±Kx}) + (±K - b)/(2c); the integral is elementary",
        notes: &["the interval must avoid zeros of sin(n x)"],
    },
    CatalogEntry {
        id: "ex5",
        title: "power coefficients, f = x",
        route: Route::FixBcf,
        params: &[p("m", 1.0), p("n", 1.0)],
        a: None,
        b: "x^m",
        c: Some("x^n"),
        f: "x",
        forced: "(1/4)*x^(-n-1)*(-2*(m-n)*x^m+x^(2*m+1)-x^2+(1-2*n)*sqrt(x))",
        forced_branches: PLUS,
        branch: Branch::Plus,
        interval: (0.5, 4.0),
        general_solution: "e^{(2/3)x^{3/2}}/(C - ∫c e^{(2/3)x^{3/2}}) + (sqrt(x) - x^m)/(2x^n); the integral is an upper incomplete gamma function",
        notes: &["the closed form of a holds for the plus branch"],
    },
    CatalogEntry {
        id: "ex6",
        title: "power coefficients, f = b c",
        route: Route::FixBcf,
        params: &[p("m", 1.0), p("n", 2.0)],
        a: None,
        b: "x^m",
        c: Some("x^n"),
        f: "x^(m+n)",
        forced: "(1/4)*x^(-n-1)*(-(x^(n+1)+2*m-2*n)*x^m+x^(2*m+1)+(m-n)*x^((m+n)/2))",
        forced_branches: PLUS,
        branch: Branch::Plus,
        interval: (0.5, 3.0),
        general_solution: "E/(C - ∫x^n E) + (x^{(m+n)/2} - x^m)/(2x^n) with E = exp(2x^{1+(m+n)/2}/(m+n+2))",
        notes: &["the closed form of a holds for the plus branch"],
    },
    CatalogEntry {
        id: "ex7",
        title: "power drive, f = 0",
        route: Route::FixAbf,
        params: &[
            p("alpha", 1.0),
            p("beta", 1.0),
            ParamSpec { name: "m", default: 2.0, constraint: "m != 1" },
            p("k", 1.0),
        ],
        a: Some("alpha/x^m"),
        b: "beta/x^m",
        c: None,
        f: "0",
        forced: "beta^2*x^(-m)/(4*alpha+2*k*beta*exp(beta*x^(1-m)/(2*(1-m))))",
        forced_branches: BOTH,
        branch: Branch::Plus,
        interval: (1.0, 3.0),
        general_solution: "-2α/β - k e^{βx^{1-m}/(2(1-m))} plus a reciprocal term with a logarithm of 2α + kβ e^{βx^{1-m}/(2(1-m))}",
        notes: &[],
    },
    CatalogEntry {
        id: "ex8",
        title: "exponential drive, f = 1",
        route: Route::FixAbf,
        params: &[p("m", 2.0)],
        a: Some("x^(m/2)*exp(x/2)"),
        b: "m/x",
        c: None,
        f: "1",
        forced: "(1/2)*x^(-1-m/2)*exp(-x/2)",
        forced_branches: PLUS,
        branch: Branch::Plus,
        interval: (1.0, 2.0),
        general_solution: "(x - m) x^{m/2} e^{x/2} + e^x/(C - ∫c e^x); the integral is a generalized exponential integral",
        notes: &[
            "a is the reciprocal integrating factor of the plus branch: a I is constant",
            "-b/(2c) = -m x^(m/2) e^(x/2) is not a solution since f != 0; the particular solution is (x - m) x^(m/2) e^(x/2)",
            "the constructed c is 0/0 at x = m, where b - sqrt(f) and the denominator vanish together",
        ],
    },
    CatalogEntry {
        id: "ex9",
        title: "inverse-power drive, f = x^-2",
        route: Route::FixAbf,
        params: &[
            ParamSpec { name: "alpha", default: 2.0, constraint: "alpha != ±1" },
            p("beta", 1.0),
            p("k", 1.0),
        ],
        a: Some("beta/x"),
        b: "alpha/x",
        c: None,
        f: "x^(-2)",
        forced: "(alpha^2-1)/(2*(2*beta*x+(alpha+1)*k*x^((alpha+3)/2)))",
        forced_branches: PLUS,
        branch: Branch::Plus,
        interval: (1.0, 3.0),
        general_solution: "-2β/(α+1) - k x^{(α+1)/2} plus a reciprocal term with a Gauss hypergeometric function",
        notes: &[
            "x^((alpha+3)/2) requires x > 0",
            "-b/(2c) is not a solution since f != 0; the particular solution is -2β/(α+1) - k x^((α+1)/2)",
        ],
    },
];

/// All entries in a fixed order.
pub fn list() -> &'static [CatalogEntry] {
    &ENTRIES
}

pub fn entry(id: &str) -> Result<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownEntry(id.to_string()))
}

/// Overrides for [`instantiate_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub branch: Option<Branch>,
    pub interval: Option<Interval>,
    /// Constant `C` of the family (default: parameter `C`, else 1).
    pub constant: Option<f64>,
}

/// Spread of `a I` for each branch of a drive term meant to be `I^{-1}`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BranchResolution {
    pub plus_spread: f64,
    pub minus_spread: f64,
    pub chosen: Option<Branch>,
}

/// A constructed catalog equation.
#[derive(Debug, Clone)]
pub struct Instance {
    pub id: &'static str,
    pub route: Route,
    pub params: Bindings,
    pub interval: Interval,
    pub system: RiccatiSystem,
    pub spec: GeneratingSpec,
    pub family: SolutionFamily,
    /// Closed form of the forced coefficient, when it holds for the branch.
    pub forced: Option<ScalarField>,
    /// The forced coefficient as produced by the construction.
    pub constructed: ScalarField,
    /// Integration constant `k` of the fixed-`a` route, for antiderivatives
    /// anchored at the left endpoint.
    pub k: Option<f64>,
    pub branch_resolution: Option<BranchResolution>,
    pub notes: Vec<String>,
}

impl Instance {
    /// The equation with every coefficient taken from its closed form: for the
    /// fix-`bcf` route `a` is replaced by the printed drive term when one is
    /// known for the branch.
    pub fn closed_form_system(&self) -> Result<RiccatiSystem> {
        match (&self.route, &self.forced) {
            (Route::FixBcf, Some(a)) => {
                RiccatiSystem::new(a.clone(), self.system.b().clone(), self.system.c().clone(), self.interval)
            }
            _ => Ok(self.system.clone()),
        }
    }

    /// Integrability of [`Instance::closed_form_system`] on `n` points.
    pub fn soundness(&self, n: usize, tol: f64) -> Result<IntegrabilityReport> {
        riccati::check_integrability(&self.closed_form_system()?, &self.spec, &Grid::uniform(self.interval, n)?, tol)
    }
}

pub fn instantiate(id: &str, params: &Bindings) -> Result<Instance> {
    instantiate_with(id, params, Options::default())
}

fn bessel_text(order: i64) -> String {
    match order {
        k if k >= 0 => format!("besselj({k},x)"),
        k if k % 2 == 0 => format!("besselj({},x)", -k),
        k => format!("(-besselj({},x))", -k),
    }
}

fn integer_param(params: &Bindings, name: &str) -> Result<i64> {
    let v = params.get(name).expect("defaults merged");
    if v.fract() != 0.0 || v < 0.0 || v > 1000.0 {
        return Err(Error::Parameter(format!("{name} must be a non-negative integer, got {v}")));
    }
    Ok(v as i64)
}

fn expand(text: &str, entry: &CatalogEntry, params: &Bindings) -> Result<String> {
    if entry.id != "ex2" {
        return Ok(text.to_string());
    }
    let m = integer_param(params, "m")?;
    let n = integer_param(params, "n")?;
    Ok(text
        .replace("{Jm1}", &bessel_text(m - 1))
        .replace("{Jn1}", &bessel_text(n - 1))
        .replace("{Jm}", &bessel_text(m))
        .replace("{Jn}", &bessel_text(n)))
}

fn resolve_params(entry: &CatalogEntry, given: &Bindings) -> Result<Bindings> {
    let mut params = Bindings::new();
    for spec in entry.params {
        params.set(spec.name, spec.default);
    }
    for (name, value) in given.iter() {
        if name == "C" {
            continue;
        }
        if !entry.params.iter().any(|s| s.name == name) {
            let known: Vec<&str> = entry.params.iter().map(|s| s.name).collect();
            return Err(Error::Parameter(format!("{} has no parameter `{name}` (known: {})", entry.id, known.join(", "))));
        }
        if !value.is_finite() {
            return Err(Error::Parameter(format!("{name} must be finite")));
        }
        params.set(name, value);
    }
    match entry.id {
        "ex7" if params.get("m") == Some(1.0) => Err(Error::Parameter("ex7 requires m != 1".into())),
        "ex9" if params.get("alpha").is_some_and(|a| (a * a - 1.0).abs() == 0.0) => {
            Err(Error::Parameter("ex9 requires alpha != ±1".into()))
        }
        _ => Ok(params),
    }
}

fn spread(values: &[f64]) -> f64 {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    (hi - lo) / (1.0 + mean.abs())
}

/// Decides for which branch `a` is a constant multiple of `1/I±`, with
/// `I± = exp(-½ ∫ (b ± sqrt f))`. The test is independent of where the
/// antiderivative is anchored.
pub fn resolve_reciprocal_branch(a: &ScalarField, b: &ScalarField, f: &ScalarField, dom: Interval) -> Result<BranchResolution> {
    let grid = Grid::uniform(dom, 257)?;
    let mut spreads = [0.0; 2];
    for (slot, branch) in Branch::both().into_iter().enumerate() {
        let integrand = b.add(&f.sqrt().scale(branch.sign()))?.scale(-0.5).restrict(dom)?;
        let factor = antiderivative(&integrand, dom.lo(), dom, DEFAULT_TABLE_TOL)?.exp();
        spreads[slot] = spread(&a.mul(&factor)?.sample(&grid)?);
    }
    let tol = 1e-8;
    let chosen = match (spreads[0] <= tol, spreads[1] <= tol) {
        (true, false) => Some(Branch::Plus),
        (false, true) => Some(Branch::Minus),
        // both would mean sqrt f vanishes identically: either branch
        (true, true) => Some(Branch::Plus),
        (false, false) => None,
    };
    Ok(BranchResolution { plus_spread: spreads[0], minus_spread: spreads[1], chosen })
}

pub fn instantiate_with(id: &str, given: &Bindings, options: Options) -> Result<Instance> {
    let entry = entry(id)?;
    let params = resolve_params(entry, given)?;
    let interval = match options.interval {
        Some(iv) => iv,
        None => Interval::new(entry.interval.0, entry.interval.1)?,
    };
    let constant = options.constant.or_else(|| given.get("C")).unwrap_or(1.0);
    let mut notes: Vec<String> = entry.notes.iter().map(|s| s.to_string()).collect();

    let field = |text: &str, env: &Bindings| -> Result<ScalarField> {
        ScalarField::parse(&expand(text, entry, &params)?, "x", env, interval)
    };
    let b = field(entry.b, &params)?;
    let f = field(entry.f, &params)?;

    let mut branch_resolution = None;
    let branch = match entry.route {
        Route::FixBcf => options.branch.unwrap_or(entry.branch),
        Route::FixAbf => {
            let a = field(entry.a.expect("fixed-a entries give a"), &params)?;
            let default = if entry.id == "ex8" {
                let resolution = resolve_reciprocal_branch(&a, &b, &f, interval)?;
                branch_resolution = Some(resolution);
                resolution.chosen.ok_or_else(|| {
                    Error::Precondition(format!(
                        "a matches neither reciprocal integrating factor (spread of a I: plus {:.3e}, minus {:.3e})",
                        resolution.plus_spread, resolution.minus_spread
                    ))
                })?
            } else {
                entry.branch
            };
            match options.branch {
                Some(requested) if requested != default && f.as_constant() != Some(0.0) => {
                    return Err(Error::Parameter(format!("{} is defined on the {default} branch", entry.id)));
                }
                _ => default,
            }
        }
    };
    let spec = GeneratingSpec::new(f.clone(), branch);
    let signed = params.clone().with("s", branch.sign());
    let forced =
        if entry.forced_branches.contains(&branch) { Some(field(entry.forced, &signed)?) } else { None };
    if forced.is_none() {
        notes.push(format!("no closed form for the forced coefficient on the {branch} branch"));
    }

    match entry.route {
        Route::FixBcf => {
            let c = field(entry.c.expect("fix-bcf entries give c"), &params)?;
            let family = riccati::general_solution(&b, &c, &spec, constant)?;
            let constructed = family.system().a().clone();
            Ok(Instance {
                id: entry.id,
                route: entry.route,
                params,
                interval,
                system: family.system().clone(),
                spec,
                family,
                forced,
                constructed,
                k: None,
                branch_resolution,
                notes,
            })
        }
        Route::FixAbf => {
            let a = field(entry.a.expect("fixed-a entries give a"), &params)?;
            let c = forced.clone().expect("fixed-a closed forms cover the entry branch");
            let system = RiccatiSystem::new(a.clone(), b.clone(), c.clone(), interval)?;
            // k for antiderivatives anchored at lo, where I = 1 and ∫ a I = 0
            let lo = interval.lo();
            let root = spec.signed_root();
            let k = (b.eval(lo)? - root.eval(lo)?) / (2.0 * c.eval(lo)?);
            let constructed = match riccati::construct_c(&a, &b, &spec, k) {
                Ok(c) => c,
                Err(Error::DenominatorZero { x }) | Err(Error::VanishingCoefficient { x })
                    if (b.eval(x)? - root.eval(x)?).abs() < 1e-6 =>
                {
                    let sub = Interval::new(lo, x - 0.02 * interval.len())?;
                    notes.push(format!(
                        "constructed c compared on [{}, {}]; removable singularity at x = {x:.9}",
                        sub.lo(),
                        sub.hi()
                    ));
                    let sub_spec = GeneratingSpec::new(f.restrict(sub)?, branch);
                    riccati::construct_c(&a.restrict(sub)?, &b.restrict(sub)?, &sub_spec, k)?
                }
                Err(e) => return Err(e),
            };
            let family = riccati::family_for_system(system.clone(), &spec, constant)?;
            Ok(Instance {
                id: entry.id,
                route: entry.route,
                params,
                interval,
                system,
                spec,
                family,
                forced,
                constructed,
                k: Some(k),
                branch_resolution,
                notes,
            })
        }
    }
}
