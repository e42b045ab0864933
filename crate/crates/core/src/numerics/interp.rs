use crate::error::{Error, Result};

/// Piecewise quintic Hermite interpolant on a uniform grid, matching value,
/// slope and curvature at every node. The result is C2, which keeps second
/// differences of cumulative tables meaningful.
#[derive(Debug, Clone)]
pub struct QuinticHermite {
    lo: f64,
    h: f64,
    values: Vec<f64>,
    slopes: Vec<f64>,
    curvatures: Vec<f64>,
}

impl QuinticHermite {
    pub fn new(lo: f64, hi: f64, values: Vec<f64>, slopes: Vec<f64>, curvatures: Vec<f64>) -> Result<Self> {
        let n = values.len();
        if n < 2 || slopes.len() != n || curvatures.len() != n || !(hi > lo) {
            return Err(Error::InvalidGrid("quintic table needs >= 2 matching nodes".into()));
        }
        Ok(QuinticHermite { lo, h: (hi - lo) / (n - 1) as f64, values, slopes, curvatures })
    }

    pub fn nodes(&self) -> usize {
        self.values.len()
    }

    pub fn node(&self, i: usize) -> f64 {
        self.lo + i as f64 * self.h
    }

    pub fn value_at_node(&self, i: usize) -> f64 {
        self.values[i]
    }

    fn locate(&self, x: f64) -> (usize, f64) {
        let last = self.values.len() - 2;
        let s = (x - self.lo) / self.h;
        let i = (s.floor().max(0.0) as usize).min(last);
        (i, s - i as f64)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (i, t) = self.locate(x);
        let h = self.h;
        let (t2, t3) = (t * t, t * t * t);
        let (t4, t5) = (t3 * t, t3 * t2);
        let h0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
        let h1 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
        let h2 = 0.5 * (t2 - 3.0 * t3 + 3.0 * t4 - t5);
        let h3 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
        let h4 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
        let h5 = 0.5 * (t3 - 2.0 * t4 + t5);
        self.values[i] * h0
            + h * self.slopes[i] * h1
            + h * h * self.curvatures[i] * h2
            + self.values[i + 1] * h3
            + h * self.slopes[i + 1] * h4
            + h * h * self.curvatures[i + 1] * h5
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let (i, t) = self.locate(x);
        let h = self.h;
        let (t2, t3, t4) = (t * t, t * t * t, t * t * t * t);
        let d0 = -30.0 * t2 + 60.0 * t3 - 30.0 * t4;
        let d1 = 1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4;
        let d2 = 0.5 * (2.0 * t - 9.0 * t2 + 12.0 * t3 - 5.0 * t4);
        let d3 = 30.0 * t2 - 60.0 * t3 + 30.0 * t4;
        let d4 = -12.0 * t2 + 28.0 * t3 - 15.0 * t4;
        let d5 = 0.5 * (3.0 * t2 - 8.0 * t3 + 5.0 * t4);
        (self.values[i] * d0 + self.values[i + 1] * d3) / h
            + self.slopes[i] * d1
            + self.slopes[i + 1] * d4
            + h * (self.curvatures[i] * d2 + self.curvatures[i + 1] * d5)
    }
}

/// Monotone piecewise cubic (Fritsch-Carlson/PCHIP slopes) through tabulated
/// samples. Monotone data yields a monotone interpolant.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        let n = xs.len();
        if n < 2 || ys.len() != n {
            return Err(Error::InvalidGrid("table needs >= 2 (x, y) pairs of equal length".into()));
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) || ys.iter().any(|y| !y.is_finite()) {
            return Err(Error::InvalidGrid("table abscissae must increase strictly; values finite".into()));
        }
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|k| (ys[k + 1] - ys[k]) / h[k]).collect();
        let mut slopes = vec![0.0; n];
        slopes[0] = delta[0];
        slopes[n - 1] = delta[n - 2];
        for k in 1..n - 1 {
            if delta[k - 1] * delta[k] > 0.0 {
                let w1 = 2.0 * h[k] + h[k - 1];
                let w2 = h[k] + 2.0 * h[k - 1];
                slopes[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
            }
        }
        Ok(MonotoneCubic { xs, ys, slopes })
    }

    pub fn lo(&self) -> f64 {
        self.xs[0]
    }

    pub fn hi(&self) -> f64 {
        self.xs[self.xs.len() - 1]
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let i = match self.xs.partition_point(|&p| p <= x) {
            0 => 0,
            k => (k - 1).min(n - 2),
        };
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        self.ys[i] * (2.0 * t3 - 3.0 * t2 + 1.0)
            + h * self.slopes[i] * (t3 - 2.0 * t2 + t)
            + self.ys[i + 1] * (-2.0 * t3 + 3.0 * t2)
            + h * self.slopes[i + 1] * (t3 - t2)
    }
}
