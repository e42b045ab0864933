//! Checks that do not trust the constructions: ODE residuals, a
//! Runge-Kutta oracle, pole location and the cross-ratio invariant.

mod dopri;

pub use dopri::{Dopri5, Termination, Trajectory, BLOW_UP};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{DerivativePath, Grid, Interval, ScalarField};
use crate::riccati::{RiccatiSystem, SolutionFamily};

const POLE_SCAN: usize = 4096;

/// `R = y' - a - b y - c y^2` sampled on a grid.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    #[serde(skip)]
    pub grid: Grid,
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    /// Abscissa of the largest `|R|`.
    pub worst_x: f64,
    pub path: DerivativePath,
}

impl ResidualReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual <= tol
    }
}

pub fn residual(y: &ScalarField, sys: &RiccatiSystem, grid: &Grid) -> Result<ResidualReport> {
    let (dy, path) = y.derivative();
    let mut residuals = Vec::with_capacity(grid.len());
    let (mut max_residual, mut worst_x) = (0.0f64, grid.first());
    for &x in grid.points() {
        let r = dy.eval(x)? - sys.rhs(x, y.eval(x)?)?;
        if r.abs() > max_residual || r.is_nan() {
            max_residual = r.abs();
            worst_x = x;
        }
        residuals.push(r);
    }
    Ok(ResidualReport { grid: grid.clone(), residuals, max_residual, worst_x, path })
}

/// Dormand-Prince integration of the system from `(x0, y0)` across `dom`.
pub fn rk_integrate(sys: &RiccatiSystem, x0: f64, y0: f64, dom: Interval, tol: f64) -> Result<Trajectory> {
    if x0 != dom.lo() {
        return Err(Error::Precondition(format!("integration must start at the interval's left end {}", dom.lo())));
    }
    if !(tol > 0.0) {
        return Err(Error::Precondition(format!("tolerance must be positive, got {tol}")));
    }
    Dopri5::new(tol).integrate(|x, y: &[f64; 1]| Ok([sys.rhs(x, y[0])?]), x0, [y0], dom.hi())
}

/// Sign changes of `denominator` on `dom`, each bisected to within 1e-9.
/// Zeros that touch without changing sign are not found.
pub fn detect_poles(denominator: &ScalarField, dom: Interval) -> Result<Vec<f64>> {
    if denominator.as_constant().is_some() {
        return Ok(vec![]);
    }
    let grid = Grid::uniform(dom, POLE_SCAN)?;
    let pts = grid.points();
    let mut poles = Vec::new();
    let mut prev = denominator.eval(pts[0])?;
    if prev == 0.0 {
        poles.push(pts[0]);
    }
    for w in pts.windows(2) {
        let next = denominator.eval(w[1])?;
        if next == 0.0 {
            poles.push(w[1]);
        } else if prev != 0.0 && (prev < 0.0) != (next < 0.0) {
            let (mut lo, mut hi) = (w[0], w[1]);
            while hi - lo > 1e-10 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if (denominator.eval(mid)? < 0.0) == (prev < 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            poles.push(0.5 * (lo + hi));
        }
        prev = next;
    }
    Ok(poles)
}

/// Cross-ratio samples of four solutions.
#[derive(Debug, Clone, Serialize)]
pub struct CrossRatioReport {
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
    pub mean: f64,
    /// `max |CR - mean|`.
    pub deviation: f64,
}

const CROSS_RATIO_GUARD: f64 = 1e-12;

/// `CR = (y1 - y3)(y2 - y4) / ((y1 - y4)(y2 - y3))`, constant in `x` for any
/// four solutions of one Riccati equation. Points where any of the four
/// differences is below 1e-12 in magnitude are skipped.
pub fn cross_ratio(ys: [&ScalarField; 4], grid: &Grid) -> Result<CrossRatioReport> {
    let mut xs = Vec::new();
    let mut values = Vec::new();
    for &x in grid.points() {
        let [y1, y2, y3, y4] = [ys[0].eval(x)?, ys[1].eval(x)?, ys[2].eval(x)?, ys[3].eval(x)?];
        let d = [y1 - y3, y2 - y4, y1 - y4, y2 - y3];
        if d.iter().any(|v| !(v.abs() > CROSS_RATIO_GUARD)) {
            continue;
        }
        xs.push(x);
        values.push(d[0] * d[1] / (d[2] * d[3]));
    }
    if values.is_empty() {
        return Err(Error::Precondition("every grid point failed the cross-ratio guard".into()));
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let deviation = values.iter().fold(0.0f64, |m, v| m.max((v - mean).abs()));
    Ok(CrossRatioReport { xs, values, mean, deviation })
}

/// Cross ratio of four members of a family; the constants must be distinct.
pub fn cross_ratio_family(family: &SolutionFamily, constants: [f64; 4], grid: &Grid) -> Result<CrossRatioReport> {
    for i in 0..4 {
        for j in i + 1..4 {
            if constants[i] == constants[j] {
                return Err(Error::Precondition(format!("cross ratio needs distinct constants, C = {} repeats", constants[i])));
            }
        }
    }
    let members = constants.map(|c| family.member(c));
    cross_ratio([&members[0], &members[1], &members[2], &members[3]], grid)
}

/// Relative difference with a floor of 1e-9 on the reference magnitude.
pub fn relative_error(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs().max(1e-9)
}
