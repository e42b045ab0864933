//! Command-line front end.
//!
//! Tabulating commands write CSV to `--out` or standard output; the JSON
//! report goes to standard output when the CSV went to a file (or with
//! `--format json`), and to standard error otherwise. Exit codes: 0 pass,
//! 1 verification failure, 2 usage or evaluation error (reported as a
//! one-line JSON object on standard output).

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{self, Options, Route};
use crate::error::{Error, Result};
use crate::expr::Bindings;
use crate::numerics::{Grid, Interval, ScalarField};
use crate::oscillator::{self, Case, ConditionSpec, OscillatorProblem, OscillatorSolution, SolitonProblem};
use crate::riccati::{self, Branch, GeneratingSpec, RiccatiSystem, SolutionFamily};
use crate::verify::{self, Termination};

/// Relative distance from a pole inside which residuals are not sampled.
const POLE_MARGIN: f64 = 0.02;
const ORACLE_TOL: f64 = 1e-12;

#[derive(Parser, Debug)]
#[command(name = "riccati", version, about = "Riccati equations from a solution-generating function")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integrability of (a, b, c) for f, or soundness of the constructed a.
    Check(RiccatiArgs),
    /// General solution with a constructed from (b, c, f).
    Solve(RiccatiArgs),
    /// General solution with c constructed from (a, b, f) and k.
    SolveFixedA(RiccatiArgs),
    /// Closed-form solution against the Runge-Kutta oracle.
    Verify(RiccatiArgs),
    /// Worked examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Damped oscillator x'' + gamma x' + omega2 x = 0 (variable t).
    Oscillator(OscillatorArgs),
    /// Travelling-wave profile b Psi'' + a Psi' + V Psi = 0 (variable xi).
    Soliton(SolitonArgs),
    /// Classical condition for c = 1: Delta = b^2 - 2b' - 4a constant.
    Delta(RiccatiArgs),
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List(Common),
    Run {
        /// Entry id (ex1 ... ex9).
        id: Option<String>,
        /// Run every entry at its defaults.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Parameter binding name=value (repeatable).
    #[arg(long = "param", value_name = "NAME=VALUE", value_parser = parse_binding)]
    params: Vec<(String, f64)>,
    #[arg(long, value_parser = parse_branch)]
    branch: Option<Branch>,
    /// Constant C of the general solution.
    #[arg(long = "C", allow_hyphen_values = true)]
    constant: Option<f64>,
    #[arg(long, value_name = "LO:HI", allow_hyphen_values = true, value_parser = parse_interval)]
    interval: Option<Interval>,
    #[arg(long, default_value_t = 512)]
    n: usize,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug)]
struct RiccatiArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    /// Integration constant of the fixed-a route.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CaseArgs {
    #[arg(long = "case", value_parser = clap::value_parser!(u32).range(1..=3))]
    case: u32,
    #[arg(long = "K", allow_hyphen_values = true)]
    big_k: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    x0: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    v0: f64,
}

#[derive(Args, Debug)]
struct OscillatorArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    gamma: String,
    /// When given, checked against the case condition.
    #[arg(long, allow_hyphen_values = true)]
    omega2: Option<String>,
    #[command(flatten)]
    case: CaseArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SolitonArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long = "V", allow_hyphen_values = true)]
    potential: String,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    speed: f64,
    #[command(flatten)]
    case: CaseArgs,
    #[command(flatten)]
    common: Common,
}

fn parse_binding(s: &str) -> std::result::Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got `{s}`"))?;
    let value: f64 = value.trim().parse().map_err(|e| format!("bad value for {name}: {e}"))?;
    Ok((name.trim().to_string(), value))
}

fn parse_branch(s: &str) -> std::result::Result<Branch, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_interval(s: &str) -> std::result::Result<Interval, String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got `{s}`"))?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    Interval::new(lo, hi).map_err(|e| e.to_string())
}

/// The JSON report; field order is fixed.
#[derive(Debug, Serialize)]
struct Report {
    command: String,
    params: BTreeMap<String, Value>,
    branch: Option<Branch>,
    max_residual: f64,
    tolerance: f64,
    pass: bool,
    poles: Vec<f64>,
    notes: Vec<String>,
}

struct Outcome {
    json: Value,
    pass: bool,
    csv: Option<String>,
}

impl Outcome {
    fn report(report: Report, csv: Option<String>) -> Outcome {
        let pass = report.pass;
        Outcome { json: serde_json::to_value(report).expect("reports serialize"), pass, csv }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Syntax { .. } | Error::UnknownFunction { .. } | Error::BesselOrder { .. } => "parse",
        Error::UnboundSymbol { .. } | Error::Parameter(_) | Error::UnknownEntry(_) => "parameter",
        Error::InvalidInterval { .. } | Error::InvalidGrid(_) | Error::Precondition(_) => "usage",
        _ => "evaluation",
    }
}

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let message = e.to_string();
            let first = message.lines().next().unwrap_or("").trim_start_matches("error: ");
            let _ = writeln!(out, "{}", json!({"error": "usage", "message": first}));
            return 2;
        }
    };
    let (outcome, common) = match dispatch(cli.command) {
        Ok(pair) => pair,
        Err(e) => {
            let _ = writeln!(out, "{}", json!({"error": error_kind(&e), "message": e.to_string()}));
            return 2;
        }
    };
    match emit(&outcome, &common, out, err) {
        Ok(()) => {
            if outcome.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(out, "{}", json!({"error": "io", "message": e.to_string()}));
            2
        }
    }
}

/// [`run_with`] on the process arguments and standard streams.
pub fn run() -> i32 {
    let argv: Vec<String> = std::env::args().collect();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(&argv, &mut stdout.lock(), &mut stderr.lock())
}

fn emit(outcome: &Outcome, common: &Common, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<()> {
    let json = serde_json::to_string(&outcome.json).expect("json values serialize");
    match (&outcome.csv, &common.out) {
        (Some(csv), Some(path)) => {
            std::fs::write(path, csv)?;
            writeln!(out, "{json}")
        }
        (Some(csv), None) if common.format == Format::Csv => {
            out.write_all(csv.as_bytes())?;
            writeln!(err, "{json}")
        }
        _ => writeln!(out, "{json}"),
    }
}

fn dispatch(command: Command) -> Result<(Outcome, Common)> {
    match command {
        Command::Check(args) => Ok((check(&args)?, args.common)),
        Command::Solve(args) => Ok((solve(&args)?, args.common)),
        Command::SolveFixedA(args) => Ok((solve_fixed_a(&args)?, args.common)),
        Command::Verify(args) => Ok((verify_oracle(&args)?, args.common)),
        Command::Delta(args) => Ok((delta(&args)?, args.common)),
        Command::Catalog { action: CatalogAction::List(common) } => Ok((catalog_list(), common)),
        Command::Catalog { action: CatalogAction::Run { id, all, common } } => {
            let outcome = match (id, all) {
                (None, true) => catalog_all(&common)?,
                (Some(id), false) => catalog_run(&id, &common)?,
                _ => return Err(Error::Precondition("give either an entry id or --all".into())),
            };
            Ok((outcome, common))
        }
        Command::Oscillator(args) => Ok((oscillator_cmd(&args)?, args.common)),
        Command::Soliton(args) => Ok((soliton_cmd(&args)?, args.common)),
    }
}

impl Common {
    fn bindings(&self) -> Bindings {
        self.params.iter().cloned().collect()
    }

    fn interval(&self) -> Result<Interval> {
        self.interval.ok_or_else(|| Error::Precondition("--interval lo:hi is required".into()))
    }

    fn grid(&self, dom: Interval) -> Result<Grid> {
        if !(self.tol > 0.0) {
            return Err(Error::Precondition(format!("--tol must be positive, got {}", self.tol)));
        }
        Grid::uniform(dom, self.n)
    }

    fn report(&self, command: &str, params: BTreeMap<String, Value>) -> Report {
        let mut params = params;
        for (name, value) in &self.params {
            params.insert(name.clone(), json!(value));
        }
        Report {
            command: command.to_string(),
            params,
            branch: None,
            max_residual: 0.0,
            tolerance: self.tol,
            pass: true,
            poles: vec![],
            notes: vec![],
        }
    }
}

fn expression(text: &Option<String>, flag: &str) -> Result<String> {
    text.clone().ok_or_else(|| Error::Precondition(format!("--{flag} is required")))
}

fn field(text: &str, var: &str, common: &Common, dom: Interval) -> Result<ScalarField> {
    ScalarField::parse(text, var, &common.bindings(), dom)
}

fn csv(header: &str, rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut s = String::from(header);
    s.push('\n');
    for row in rows {
        if row.iter().any(|v| !v.is_finite()) {
            continue;
        }
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

fn tabulate(y: &ScalarField, grid: &Grid) -> String {
    csv("x,y", grid.points().iter().map(|&x| vec![x, y.eval(x).unwrap_or(f64::NAN)]))
}

fn riccati_params(args: &RiccatiArgs) -> BTreeMap<String, Value> {
    let mut p = BTreeMap::new();
    for (name, value) in [("a", &args.a), ("b", &args.b), ("c", &args.c), ("f", &args.f)] {
        if let Some(v) = value {
            p.insert(name.to_string(), json!(v));
        }
    }
    if let Some(k) = args.k {
        p.insert("k".into(), json!(k));
    }
    if let Some(c) = args.common.constant {
        p.insert("C".into(), json!(c));
    }
    p
}

fn describe(label: &str, g: &ScalarField) -> Option<String> {
    g.as_expr().map(|e| format!("{label} = {e}"))
}

/// Residual of the general solution away from its poles.
fn family_residual(family: &SolutionFamily, grid: &Grid) -> Result<f64> {
    let margin = POLE_MARGIN * family.domain().len();
    let sub = grid.avoiding(family.poles(), margin)?;
    Ok(verify::residual(&family.general(), family.system(), &sub)?.max_residual)
}

fn spec_of(args: &RiccatiArgs, dom: Interval) -> Result<GeneratingSpec> {
    let f = field(args.f.as_deref().unwrap_or("0"), "x", &args.common, dom)?;
    Ok(GeneratingSpec::new(f, args.common.branch.unwrap_or(Branch::Plus)))
}

fn check(args: &RiccatiArgs) -> Result<Outcome> {
    let common = &args.common;
    let dom = common.interval()?;
    let grid = common.grid(dom)?;
    let b = field(&expression(&args.b, "b")?, "x", common, dom)?;
    let c = field(&expression(&args.c, "c")?, "x", common, dom)?;
    let spec = spec_of(args, dom)?;
    let mut report = common.report("check", riccati_params(args));
    report.branch = Some(spec.branch);
    match &args.a {
        Some(a) => {
            let a = field(a, "x", common, dom)?;
            let sys = RiccatiSystem::allowing_vanishing_c(a, b, c, dom)?;
            let r = riccati::check_integrability(&sys, &spec, &grid, common.tol)?;
            report.max_residual = r.max_residual;
            report.notes.push("max_residual: a minus the coefficient forced by (b, c, f)".into());
        }
        None => {
            let a = riccati::construct_a(&b, &c, &spec)?;
            let sys = RiccatiSystem::new(a.clone(), b.clone(), c.clone(), a.domain())?;
            let yp = riccati::particular_solution(&b, &c, &spec)?;
            let r = verify::residual(&yp, &sys, &grid)?;
            report.max_residual = r.max_residual;
            report.notes.push("max_residual: particular solution in the constructed equation".into());
            report.notes.extend(describe("a", &a));
        }
    }
    report.pass = report.max_residual <= common.tol;
    Ok(Outcome::report(report, None))
}

fn family_outcome(command: &str, args: &RiccatiArgs, family: SolutionFamily) -> Result<Outcome> {
    let common = &args.common;
    let grid = common.grid(family.domain())?;
    let mut report = common.report(command, riccati_params(args));
    report.branch = Some(family.branch());
    report.max_residual = family_residual(&family, &grid)?;
    report.pass = report.max_residual <= common.tol;
    report.poles = family.poles().to_vec();
    report.notes.push("max_residual: Riccati residual of the general solution on pole-free points".into());
    Ok(Outcome::report(report, Some(tabulate(&family.general(), &grid))))
}

fn solve(args: &RiccatiArgs) -> Result<Outcome> {
    let common = &args.common;
    let dom = common.interval()?;
    let b = field(&expression(&args.b, "b")?, "x", common, dom)?;
    let c = field(&expression(&args.c, "c")?, "x", common, dom)?;
    let family = riccati::general_solution(&b, &c, &spec_of(args, dom)?, common.constant.unwrap_or(1.0))?;
    let mut outcome = family_outcome("solve", args, family)?;
    if let Some(a) = describe("a", &riccati::construct_a(&b, &c, &spec_of(args, dom)?)?) {
        outcome.json["notes"].as_array_mut().expect("notes array").push(json!(a));
    }
    Ok(outcome)
}

fn solve_fixed_a(args: &RiccatiArgs) -> Result<Outcome> {
    let common = &args.common;
    let dom = common.interval()?;
    let a = field(&expression(&args.a, "a")?, "x", common, dom)?;
    let b = field(&expression(&args.b, "b")?, "x", common, dom)?;
    let k = args.k.ok_or_else(|| Error::Precondition("--k is required".into()))?;
    let family = riccati::general_solution_fixed_a(&a, &b, &spec_of(args, dom)?, k, common.constant.unwrap_or(1.0))?;
    family_outcome("solve-fixed-a", args, family)
}

fn verify_oracle(args: &RiccatiArgs) -> Result<Outcome> {
    let common = &args.common;
    let dom = common.interval()?;
    common.grid(dom)?;
    let b = field(&expression(&args.b, "b")?, "x", common, dom)?;
    let c = field(&expression(&args.c, "c")?, "x", common, dom)?;
    let spec = spec_of(args, dom)?;
    let constant = common.constant.unwrap_or(1.0);
    let mut report = common.report("verify", riccati_params(args));
    report.branch = Some(spec.branch);
    let family = match &args.a {
        Some(a) => {
            let sys = RiccatiSystem::new(field(a, "x", common, dom)?, b, c, dom)?;
            let check = riccati::check_integrability(&sys, &spec, &Grid::uniform(dom, common.n)?, common.tol)?;
            if !check.pass {
                report.max_residual = check.max_residual;
                report.pass = false;
                report.notes.push("(a, b, c) does not satisfy the constraint for f".into());
                return Ok(Outcome::report(report, None));
            }
            riccati::family_for_system(sys, &spec, constant)?
        }
        None => riccati::general_solution(&b, &c, &spec, constant)?,
    };
    let lo = family.domain().lo();
    let end = match family.poles().first() {
        Some(&p) => lo + 0.99 * (p - lo),
        None => family.domain().hi(),
    };
    let span = Interval::new(lo, end)?;
    let y = family.general();
    let traj = verify::rk_integrate(family.system(), lo, y.eval(lo)?, span, ORACLE_TOL)?;
    let mut worst = 0.0f64;
    for (x, v) in traj.xs.iter().zip(&traj.ys) {
        worst = worst.max(verify::relative_error(v[0], y.eval(*x)?));
    }
    report.max_residual = worst;
    report.pass = worst <= common.tol && traj.status == Termination::Completed;
    report.poles = family.poles().to_vec();
    report.notes.push(format!("max_residual: relative error against Dormand-Prince on [{lo}, {end}]"));
    if traj.status != Termination::Completed {
        report.notes.push(format!("oracle stopped early: {:?}", traj.status));
    }
    let rows = traj.xs.iter().zip(&traj.ys).map(|(x, v)| vec![*x, v[0]]);
    Ok(Outcome::report(report, Some(csv("x,y", rows))))
}

fn delta(args: &RiccatiArgs) -> Result<Outcome> {
    let common = &args.common;
    let dom = common.interval()?;
    let grid = common.grid(dom)?;
    let a = field(&expression(&args.a, "a")?, "x", common, dom)?;
    let b = field(&expression(&args.b, "b")?, "x", common, dom)?;
    let r = riccati::classical_delta(&a, &b, &grid)?;
    let mut report = common.report("delta", riccati_params(args));
    report.max_residual = r.delta.iter().fold(0.0f64, |m, d| m.max((d - r.mean).abs()));
    report.pass = r.is_constant;
    report.notes.push(format!("mean Delta = {:.16e}", r.mean));
    report.notes.push("max_residual: largest deviation of Delta from its mean".into());
    if r.non_real_roots {
        report.notes.push("Delta < 0: the particular solutions -(b ± sqrt Delta)/2 are not real".into());
    } else if r.is_constant {
        report.notes.push("particular solutions y = -(b ± sqrt Delta)/2".into());
    }
    let rows = grid.points().iter().zip(&r.delta).map(|(&x, &d)| vec![x, d]).collect::<Vec<_>>();
    Ok(Outcome::report(report, Some(csv("x,y", rows))))
}

fn catalog_list() -> Outcome {
    let entries: Vec<Value> = catalog::list()
        .iter()
        .map(|e| {
            let params: Vec<Value> = e
                .params
                .iter()
                .map(|p| json!({"name": p.name, "default": p.default, "constraint": p.constraint}))
                .collect();
            let route = match e.route {
                Route::FixBcf => "fix-bcf",
                Route::FixAbf => "fix-abf",
            };
            json!({
                "id": e.id,
                "title": e.title,
                "route": route,
                "params": params,
                "interval": [e.interval.0, e.interval.1],
                "branch": e.branch,
                "general_solution": e.general_solution,
            })
        })
        .collect();
    Outcome { json: Value::Array(entries), pass: true, csv: None }
}

fn catalog_report(id: &str, common: &Common, bindings: &Bindings) -> Result<(Report, catalog::Instance, Grid)> {
    let options = Options { branch: common.branch, interval: common.interval, constant: common.constant };
    let inst = catalog::instantiate_with(id, bindings, options)?;
    let grid = common.grid(inst.interval)?;
    let soundness = inst.soundness(common.n, common.tol)?;
    let general = family_residual(&inst.family, &grid)?;
    let mut params: BTreeMap<String, Value> = inst.params.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    params.insert("id".into(), json!(id));
    params.insert("C".into(), json!(inst.family.constant()));
    if let Some(k) = inst.k {
        params.insert("k".into(), json!(k));
    }
    let mut report = Report {
        command: "catalog run".into(),
        params,
        branch: Some(inst.spec.branch),
        max_residual: soundness.max_residual,
        tolerance: common.tol,
        pass: soundness.pass,
        poles: inst.family.poles().to_vec(),
        notes: vec!["max_residual: closed-form coefficients against the constraint".into()],
    };
    report.notes.push(format!("general solution residual on pole-free points: {general:.3e}"));
    report.notes.extend(inst.notes.iter().cloned());
    Ok((report, inst, grid))
}

fn catalog_run(id: &str, common: &Common) -> Result<Outcome> {
    let (report, inst, grid) = catalog_report(id, common, &common.bindings())?;
    Ok(Outcome::report(report, Some(tabulate(&inst.family.general(), &grid))))
}

fn catalog_all(common: &Common) -> Result<Outcome> {
    if !common.params.is_empty() {
        return Err(Error::Precondition("--all runs the defaults; --param is not accepted".into()));
    }
    let mut reports = Vec::new();
    let mut pass = true;
    for entry in catalog::list() {
        let (report, _, _) = catalog_report(entry.id, common, &Bindings::new())?;
        pass &= report.pass;
        reports.push(serde_json::to_value(report).expect("reports serialize"));
    }
    Ok(Outcome { json: Value::Array(reports), pass, csv: None })
}

fn case_spec(args: &CaseArgs, common: &Common, var: &str, dom: Interval) -> Result<(Case, ConditionSpec)> {
    let case = Case::from_number(args.case)?;
    let f = match (&args.f, case) {
        (Some(text), _) => Some(field(text, var, common, dom)?),
        (None, Case::Case3) => return Err(Error::Precondition("--f is required for case 3".into())),
        (None, _) => None,
    };
    if case == Case::Case2 && args.big_k.is_none() {
        return Err(Error::Precondition("--K is required for case 2".into()));
    }
    Ok((case, ConditionSpec { k: args.big_k, f, branch: common.branch }))
}

fn case_params(args: &CaseArgs) -> BTreeMap<String, Value> {
    let mut p = BTreeMap::new();
    p.insert("case".to_string(), json!(args.case));
    p.insert("x0".to_string(), json!(args.x0));
    p.insert("v0".to_string(), json!(args.v0));
    if let Some(k) = args.big_k {
        p.insert("K".into(), json!(k));
    }
    if let Some(f) = &args.f {
        p.insert("f".into(), json!(f));
    }
    p
}

/// Oracle deviation `max |x_rk - x| / max(1, |x|)` for an oscillator solution.
fn oscillator_deviation(sol: &OscillatorSolution, dom: Interval) -> Result<f64> {
    let traj = oscillator::rk_oscillator(&sol.gamma, &sol.omega2, sol.x0, sol.v0, dom, ORACLE_TOL)?;
    let mut worst = 0.0f64;
    for (t, y) in traj.xs.iter().zip(&traj.ys) {
        let x = sol.x.eval(*t)?;
        worst = worst.max((y[0] - x).abs() / x.abs().max(1.0));
    }
    Ok(worst)
}

fn oscillator_outcome(mut report: Report, sol: &OscillatorSolution, grid: &Grid, dom: Interval, tol: f64) -> Result<Outcome> {
    report.branch = sol.branch;
    report.max_residual = oscillator_deviation(sol, dom)?;
    report.pass = report.max_residual <= tol;
    report.poles = verify::detect_poles(&sol.x, dom)?;
    report.notes.push("max_residual: deviation from Dormand-Prince, relative to max(1, |x|)".into());
    report.notes.push("poles: zeros of x, where u = x'/x is singular".into());
    report.notes.extend(sol.notes.iter().cloned());
    let rows = grid.points().iter().map(|&t| vec![t, sol.x.eval(t).unwrap_or(f64::NAN), sol.u.eval(t).unwrap_or(f64::NAN)]);
    Ok(Outcome::report(report, Some(csv("t,x,u", rows.collect::<Vec<_>>()))))
}

fn oscillator_cmd(args: &OscillatorArgs) -> Result<Outcome> {
    let common = &args.common;
    let dom = common.interval()?;
    let grid = common.grid(dom)?;
    let gamma = field(&args.gamma, "t", common, dom)?;
    let (case, spec) = case_spec(&args.case, common, "t", dom)?;
    let mut params = case_params(&args.case);
    params.insert("gamma".into(), json!(args.gamma));
    let mut report = common.report("oscillator", params);
    if let Some(text) = &args.omega2 {
        report.params.insert("omega2".into(), json!(text));
        let problem = OscillatorProblem::new(gamma.clone(), field(text, "t", common, dom)?, dom)?;
        let cond = oscillator::check_condition(&problem, case, &spec, &grid, common.tol)?;
        if !cond.pass {
            report.max_residual = cond.max_residual;
            report.pass = false;
            report.notes.push(format!("omega2 violates the {case:?} condition"));
            return Ok(Outcome::report(report, None));
        }
    }
    let problem = OscillatorProblem::new(gamma.clone(), ScalarField::constant(0.0, dom), dom)?;
    let sol = oscillator::solve(&problem, case, &spec, args.case.x0, args.case.v0)?;
    if let Some(w) = describe("omega2", &sol.omega2) {
        report.notes.push(w);
    }
    oscillator_outcome(report, &sol, &grid, dom, common.tol)
}

fn soliton_cmd(args: &SolitonArgs) -> Result<Outcome> {
    let common = &args.common;
    let dom = common.interval()?;
    let grid = common.grid(dom)?;
    let (case, spec) = case_spec(&args.case, common, "xi", dom)?;
    let problem = SolitonProblem {
        a: field(&args.a, "xi", common, dom)?,
        b: field(&args.b, "xi", common, dom)?,
        potential: field(&args.potential, "xi", common, dom)?,
        speed: args.speed,
        domain: dom,
    };
    let mut params = case_params(&args.case);
    params.insert("a".into(), json!(args.a));
    params.insert("b".into(), json!(args.b));
    params.insert("V".into(), json!(args.potential));
    params.insert("speed".into(), json!(args.speed));
    let report = common.report("soliton", params);
    let sol = match oscillator::soliton_profile(&problem, args.case.x0, args.case.v0, case, &spec) {
        Err(Error::Precondition(message)) => {
            let mut report = report;
            report.pass = false;
            report.max_residual = f64::NAN;
            report.notes.push(message);
            return Ok(Outcome::report(report, None));
        }
        other => other?,
    };
    oscillator_outcome(report, &sol, &grid, dom, common.tol)
}
