use crate::error::{Error, Result};

/// Closed real interval `[lo, hi]` with `lo < hi`, both finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(Interval { lo, hi })
        } else {
            Err(Error::InvalidInterval { lo, hi })
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    /// Rounding slack used when testing membership.
    pub(crate) fn slack(&self) -> f64 {
        1e-12 * self.lo.abs().max(self.hi.abs()).max(self.len())
    }

    pub fn contains(&self, x: f64) -> bool {
        let s = self.slack();
        x >= self.lo - s && x <= self.hi + s
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.contains(other.lo) && self.contains(other.hi)
    }

    pub fn intersect(&self, other: &Interval) -> Result<Interval> {
        Interval::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }
}

/// Strictly increasing sample abscissae.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
}

impl Grid {
    /// `n` equally spaced points including both endpoints; `n >= 16`.
    pub fn uniform(interval: Interval, n: usize) -> Result<Self> {
        if n < 16 {
            return Err(Error::InvalidGrid(format!("need at least 16 points, got {n}")));
        }
        let h = interval.len() / (n - 1) as f64;
        let mut points: Vec<f64> = (0..n).map(|i| interval.lo() + i as f64 * h).collect();
        points[n - 1] = interval.hi();
        Ok(Grid { points })
    }

    /// Arbitrary strictly increasing points (used for subgrids).
    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidGrid("empty grid".into()));
        }
        if points.iter().any(|p| !p.is_finite()) || points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid("points must be finite and strictly increasing".into()));
        }
        Ok(Grid { points })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn first(&self) -> f64 {
        self.points[0]
    }

    pub fn last(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    /// Drops points closer than `margin` to any pole. Fails if nothing is left.
    pub fn avoiding(&self, poles: &[f64], margin: f64) -> Result<Grid> {
        let kept: Vec<f64> = self
            .points
            .iter()
            .copied()
            .filter(|x| poles.iter().all(|p| (x - p).abs() >= margin))
            .collect();
        Grid::from_points(kept)
    }
}
