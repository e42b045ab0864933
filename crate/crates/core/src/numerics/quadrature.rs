//! Adaptive Gauss-Kronrod quadrature and cumulative antiderivative tables.

use super::interp::QuinticHermite;
use super::{Interval, ScalarField};
use crate::error::{Error, Result};

pub const DEFAULT_QUAD_TOL: f64 = 1e-10;
pub const DEFAULT_TABLE_TOL: f64 = 1e-10;

const MAX_SEGMENTS: usize = 2000;
const MAX_TABLE_PANELS: usize = 1 << 16;
const INITIAL_TABLE_PANELS: usize = 32;

// 15-point Kronrod abscissae and weights; the odd entries (and the centre)
// are the embedded 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    abs: f64,
}

fn gk15<F>(f: &F, lo: f64, hi: f64) -> Result<Segment>
where
    F: Fn(f64) -> Result<f64>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs = kronrod.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let (a, b) = (f(center - dx)?, f(center + dx)?);
        fv1[j] = a;
        fv2[j] = b;
        kronrod += WGK[j] * (a + b);
        abs += WGK[j] * (a.abs() + b.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (a + b);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half.abs();
    let (value, abs, asc) = (kronrod * half, abs * scale, asc * scale);
    let mut error = ((kronrod - gauss) * half).abs();
    // QUADPACK error rescaling
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    if abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * abs);
    }
    if !value.is_finite() || !error.is_finite() {
        return Err(Error::NonConvergence { lo, hi, error: f64::INFINITY });
    }
    Ok(Segment { lo, hi, value, error, abs })
}

/// Adaptive 15-point Gauss-Kronrod quadrature of a closure.
pub(crate) fn integrate_fn<F>(f: &F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if lo == hi {
        return Ok(0.0);
    }
    if lo > hi {
        return integrate_fn(f, hi, lo, tol).map(|v| -v);
    }
    let mut segments = vec![gk15(f, lo, hi)?];
    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        let abs: f64 = segments.iter().map(|s| s.abs).sum();
        if error <= tol.max(50.0 * f64::EPSILON * abs) {
            return Ok(value);
        }
        let (worst_idx, worst) = segments
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .map(|(i, s)| (i, *s))
            .expect("non-empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if segments.len() >= MAX_SEGMENTS || mid <= worst.lo || mid >= worst.hi {
            return Err(Error::NonConvergence { lo: worst.lo, hi: worst.hi, error: worst.error });
        }
        segments[worst_idx] = gk15(f, worst.lo, mid)?;
        segments.push(gk15(f, mid, worst.hi)?);
    }
}

/// `integral_lo^hi g(x) dx` to absolute tolerance `tol`.
pub fn integrate(g: &ScalarField, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Precondition(format!("tolerance must be positive, got {tol}")));
    }
    let dom = g.domain();
    if !dom.contains(lo) || !dom.contains(hi) {
        return Err(Error::OutOfDomain { x: if dom.contains(lo) { hi } else { lo }, lo: dom.lo(), hi: dom.hi() });
    }
    integrate_fn(&|x| g.eval(x), lo, hi, tol)
}

fn build_table(g: &ScalarField, dom: Interval, panels: usize, tol: f64) -> Result<(QuinticHermite, Vec<f64>)> {
    let h = dom.len() / panels as f64;
    let node = |i: usize| if i == panels { dom.hi() } else { dom.lo() + i as f64 * h };
    let (dg, _) = g.derivative();
    let mut values = Vec::with_capacity(panels + 1);
    let mut slopes = Vec::with_capacity(panels + 1);
    let mut curvatures = Vec::with_capacity(panels + 1);
    let mut acc = 0.0;
    let panel_tol = tol * h / dom.len();
    for i in 0..=panels {
        let x = node(i);
        if i > 0 {
            acc += integrate_fn(&|t| g.eval(t), node(i - 1), x, panel_tol)?;
        }
        values.push(acc);
        slopes.push(g.eval(x)?);
        curvatures.push(dg.eval(x)?);
    }
    let table = QuinticHermite::new(dom.lo(), dom.hi(), values, slopes.clone(), curvatures)?;
    Ok((table, slopes))
}

/// Antiderivative `F` of `g` on `dom` with `F(x0) = 0`.
///
/// The result is a dense quintic Hermite table (values from per-panel
/// quadrature, slopes `g`, curvatures `g'`). The panel count doubles until
/// the coarse table agrees with the refined one at the new nodes, in value
/// and in slope, to `tol * (1 + |.|)`.
pub fn antiderivative(g: &ScalarField, x0: f64, dom: Interval, tol: f64) -> Result<ScalarField> {
    if !(tol > 0.0) {
        return Err(Error::Precondition(format!("tolerance must be positive, got {tol}")));
    }
    if !dom.contains(x0) {
        return Err(Error::OutOfDomain { x: x0, lo: dom.lo(), hi: dom.hi() });
    }
    if !g.domain().contains_interval(&dom) {
        return Err(Error::Precondition("antiderivative interval exceeds the integrand domain".into()));
    }
    if let Some(v) = g.as_constant() {
        let ends = vec![v * (dom.lo() - x0), v * (dom.hi() - x0)];
        let line = QuinticHermite::new(dom.lo(), dom.hi(), ends, vec![v, v], vec![0.0, 0.0])?;
        return Ok(ScalarField::cumulative(line, 0.0, dom));
    }
    let mut panels = INITIAL_TABLE_PANELS;
    let (mut coarse, _) = build_table(g, dom, panels, tol)?;
    loop {
        let (fine, fine_slopes) = build_table(g, dom, 2 * panels, tol)?;
        let mut worst = 0.0f64;
        for j in (1..2 * panels).step_by(2) {
            let x = fine.node(j);
            let dv = (coarse.eval(x) - fine.value_at_node(j)).abs() / (1.0 + fine.value_at_node(j).abs());
            let ds = (coarse.derivative(x) - fine_slopes[j]).abs() / (1.0 + fine_slopes[j].abs());
            worst = worst.max(dv).max(ds);
        }
        panels *= 2;
        if worst < tol {
            let offset = fine.eval(x0);
            return Ok(ScalarField::cumulative(fine, offset, dom));
        }
        if panels >= MAX_TABLE_PANELS {
            return Err(Error::NonConvergence { lo: dom.lo(), hi: dom.hi(), error: worst });
        }
        coarse = fine;
    }
}
