use serde::Serialize;

use crate::error::Result;

/// Divergence threshold for blow-up detection.
pub const BLOW_UP: f64 = 1e12;
const BLOW_UP_AT_MIN_STEP: f64 = 1e6;
const MAX_STEPS: usize = 2_000_000;

// Dormand-Prince 5(4) tableau
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// fifth-order minus fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// How an integration ended.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Termination {
    Completed,
    /// The solution left every bound near `x`.
    BlowUp { x: f64 },
    /// The step size collapsed at `x` without a divergence signature.
    StepFailure { x: f64 },
}

/// Accepted steps of an integration.
#[derive(Debug, Clone)]
pub struct Trajectory<const N: usize = 1> {
    pub xs: Vec<f64>,
    pub ys: Vec<[f64; N]>,
    pub status: Termination,
}

impl<const N: usize> Trajectory<N> {
    /// One component at every accepted step.
    pub fn component(&self, i: usize) -> Vec<f64> {
        self.ys.iter().map(|y| y[i]).collect()
    }

    pub fn last(&self) -> (f64, [f64; N]) {
        (*self.xs.last().expect("non-empty"), *self.ys.last().expect("non-empty"))
    }
}

impl Trajectory<1> {
    pub fn values(&self) -> Vec<f64> {
        self.component(0)
    }
}

/// Embedded Dormand-Prince 5(4) integrator with PI step-size control.
#[derive(Debug, Clone, Copy)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (i, o) in out.iter_mut().enumerate() {
        let mut s = 0.0;
        for (w, k) in terms {
            s += w * k[i];
        }
        *o += h * s;
    }
    out
}

impl Dopri5 {
    pub fn new(tol: f64) -> Self {
        Dopri5 { rtol: tol, atol: tol }
    }

    fn norm<const N: usize>(&self, err: &[f64; N], y0: &[f64; N], y1: &[f64; N]) -> f64 {
        let mut s = 0.0;
        for i in 0..N {
            let scale = self.atol + self.rtol * y0[i].abs().max(y1[i].abs());
            s += (err[i] / scale).powi(2);
        }
        (s / N as f64).sqrt()
    }

    /// Integrates `y' = f(x, y)` from `(x0, y0)` to `x_end > x0`.
    pub fn integrate<const N: usize, F>(&self, f: F, x0: f64, y0: [f64; N], x_end: f64) -> Result<Trajectory<N>>
    where
        F: Fn(f64, &[f64; N]) -> Result<[f64; N]>,
    {
        let mut xs = vec![x0];
        let mut ys = vec![y0];
        let (mut x, mut y) = (x0, y0);
        let mut k1 = f(x, &y)?;
        let span = x_end - x0;
        let mut h = self.initial_step(&f, x, &y, &k1, span)?;
        let mut prev_err: f64 = 1e-4;
        let finish = |xs, ys, status| Ok(Trajectory { xs, ys, status });
        for _ in 0..MAX_STEPS {
            if x >= x_end {
                return finish(xs, ys, Termination::Completed);
            }
            let h_min = 1e-14 * x.abs().max(span.abs()).max(1.0);
            let last = x + h >= x_end;
            let step = if last { x_end - x } else { h };
            let k2 = f(x + C2 * step, &axpy(&y, step, &[(A21, &k1)]))?;
            let k3 = f(x + C3 * step, &axpy(&y, step, &[(A31, &k1), (A32, &k2)]))?;
            let k4 = f(x + C4 * step, &axpy(&y, step, &[(A41, &k1), (A42, &k2), (A43, &k3)]))?;
            let k5 = f(x + C5 * step, &axpy(&y, step, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]))?;
            let k6 = f(
                x + step,
                &axpy(&y, step, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
            )?;
            let y_new = axpy(&y, step, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
            let x_new = if last { x_end } else { x + step };
            let k7 = f(x_new, &y_new)?;
            let err_vec = axpy(
                &[0.0; N],
                step,
                &[(E1, &k1), (E3, &k3), (E4, &k4), (E5, &k5), (E6, &k6), (E7, &k7)],
            );
            let err = self.norm(&err_vec, &y, &y_new);
            let finite = y_new.iter().all(|v| v.is_finite()) && err.is_finite();
            if finite && err <= 1.0 {
                x = x_new;
                y = y_new;
                k1 = k7;
                xs.push(x);
                ys.push(y);
                if y.iter().any(|v| v.abs() > BLOW_UP) {
                    return finish(xs, ys, Termination::BlowUp { x });
                }
                let factor = 0.9 * err.max(1e-10).powf(-0.7 / 5.0) * prev_err.powf(0.4 / 5.0);
                h = step * factor.clamp(0.2, 10.0);
                prev_err = err.max(1e-4);
            } else {
                let factor = if finite { (0.9 * err.powf(-0.2)).max(0.2) } else { 0.2 };
                h = step * factor;
            }
            if h < h_min {
                let big = y.iter().any(|v| v.abs() > BLOW_UP_AT_MIN_STEP);
                let status = if big { Termination::BlowUp { x } } else { Termination::StepFailure { x } };
                return finish(xs, ys, status);
            }
        }
        finish(xs, ys, Termination::StepFailure { x })
    }

    fn initial_step<const N: usize, F>(&self, f: &F, x: f64, y: &[f64; N], k1: &[f64; N], span: f64) -> Result<f64>
    where
        F: Fn(f64, &[f64; N]) -> Result<[f64; N]>,
    {
        let zero = [0.0; N];
        let d0 = self.norm(y, &zero, y);
        let d1 = self.norm(k1, &zero, y);
        let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        let h0 = h0.min(span);
        let y1 = axpy(y, h0, &[(1.0, k1)]);
        let k2 = f(x + h0, &y1)?;
        let diff: [f64; N] = std::array::from_fn(|i| (k2[i] - k1[i]) / h0);
        let d2 = self.norm(&diff, &zero, y);
        let h1 = if d1.max(d2) <= 1e-15 { (h0 * 1e-3).max(1e-6) } else { (0.01 / d1.max(d2)).powf(0.2) };
        Ok((100.0 * h0).min(h1).min(span))
    }
}
