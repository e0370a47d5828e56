//! Piecewise sampled trajectories and series of them.
//!
//! A [`PiecewiseTrajectory`] stores, per grid interval, `2M + 1` vector
//! samples at uniform inner times (interval endpoints plus midpoints of
//! the `M` integration steps). Adjacent intervals share the junction
//! value exactly. Dense output between samples is cubic Hermite with
//! finite-difference slopes.

use crate::grid::Grid;
use crate::linalg::Vector;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMode {
    /// Max Euclidean norm over stored samples.
    Value,
    /// Max norm of one-sided finite-difference derivatives over inner
    /// sub-steps.
    Derivative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseTrajectory {
    grid: Grid,
    dim: usize,
    inner_steps: usize,
    /// `samples[i][s]` is the value at `sample_time(i, s)`.
    samples: Vec<Vec<Vector>>,
}

/// The time of sample `s` of interval `(a, b)` with `2m + 1` samples;
/// the final sample lands exactly on `b`.
pub(crate) fn sample_time(a: f64, b: f64, inner_steps: usize, s: usize) -> f64 {
    let last = 2 * inner_steps;
    if s == last {
        b
    } else {
        a + (b - a) / last as f64 * s as f64
    }
}

impl PiecewiseTrajectory {
    /// Builds a trajectory from per-interval samples, validating shape and
    /// the shared-junction invariant.
    pub fn from_parts(grid: Grid, dim: usize, inner_steps: usize, samples: Vec<Vec<Vector>>) -> Result<Self> {
        if dim == 0 || inner_steps == 0 {
            return Err(Error::InvalidArgument("dim and inner_steps must be positive".into()));
        }
        if samples.len() != grid.len() {
            return Err(Error::InvalidArgument(format!(
                "expected samples for {} intervals, got {}",
                grid.len(),
                samples.len()
            )));
        }
        let per = 2 * inner_steps + 1;
        for (i, ivl) in samples.iter().enumerate() {
            if ivl.len() != per {
                return Err(Error::InvalidArgument(format!(
                    "interval {i} has {} samples, expected {per}",
                    ivl.len()
                )));
            }
            if ivl.iter().any(|v| v.len() != dim) {
                return Err(Error::InvalidArgument(format!("interval {i} has samples of wrong dimension")));
            }
            if i > 0 && samples[i - 1][per - 1] != ivl[0] {
                return Err(Error::InvalidArgument(format!(
                    "junction value mismatch between intervals {} and {i}",
                    i - 1
                )));
            }
        }
        Ok(PiecewiseTrajectory {
            grid,
            dim,
            inner_steps,
            samples,
        })
    }

    /// Samples a function on the standard layout (useful for fixtures and
    /// for resampling reference solutions).
    pub fn sample_from_fn(grid: Grid, inner_steps: usize, f: impl Fn(f64) -> Vector) -> Result<Self> {
        let mut samples = Vec::with_capacity(grid.len());
        let mut dim = 0;
        for i in 0..grid.len() {
            let (a, b) = grid.interval(i);
            let ivl: Vec<Vector> = (0..=2 * inner_steps)
                .map(|s| f(sample_time(a, b, inner_steps, s)))
                .collect();
            dim = ivl[0].len();
            samples.push(ivl);
        }
        Self::from_parts(grid, dim, inner_steps, samples)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inner_steps(&self) -> usize {
        self.inner_steps
    }

    pub fn samples_per_interval(&self) -> usize {
        2 * self.inner_steps + 1
    }

    pub fn interval_samples(&self, i: usize) -> &[Vector] {
        &self.samples[i]
    }

    /// Value at the left endpoint of interval `i` (the junction value).
    pub fn left_value(&self, i: usize) -> &Vector {
        &self.samples[i][0]
    }

    /// Final value of the trajectory.
    pub fn end_value(&self) -> &Vector {
        self.samples.last().unwrap().last().unwrap()
    }

    pub fn interval_time(&self, i: usize, s: usize) -> f64 {
        let (a, b) = self.grid.interval(i);
        sample_time(a, b, self.inner_steps, s)
    }

    /// All `(t, value)` pairs in time order, junction duplicates skipped.
    pub fn iter_samples(&self) -> impl Iterator<Item = (f64, &Vector)> + '_ {
        (0..self.grid.len()).flat_map(move |i| {
            let skip = usize::from(i > 0);
            (skip..self.samples_per_interval()).map(move |s| (self.interval_time(i, s), &self.samples[i][s]))
        })
    }

    fn slope(&self, i: usize, s: usize, delta: f64) -> Vector {
        let ivl = &self.samples[i];
        let last = ivl.len() - 1;
        if s == 0 {
            (-3.0 * &ivl[0] + 4.0 * &ivl[1] - &ivl[2]) / (2.0 * delta)
        } else if s == last {
            (3.0 * &ivl[last] - 4.0 * &ivl[last - 1] + &ivl[last - 2]) / (2.0 * delta)
        } else {
            (&ivl[s + 1] - &ivl[s - 1]) / (2.0 * delta)
        }
    }

    /// Dense evaluation: stored samples are returned exactly; other times
    /// use cubic Hermite interpolation with finite-difference slopes.
    pub fn eval(&self, t: f64) -> Result<Vector> {
        let i = self.grid.locate(t)?;
        let (a, b) = self.grid.interval(i);
        let last = 2 * self.inner_steps;
        let delta = (b - a) / last as f64;
        let offset = (t - a) / delta;
        let near = (offset.round() as usize).min(last);
        if sample_time(a, b, self.inner_steps, near) == t {
            return Ok(self.samples[i][near].clone());
        }
        let s = (offset.floor() as usize).min(last - 1);
        let x = (t - sample_time(a, b, self.inner_steps, s)) / delta;
        let d0 = self.slope(i, s, delta);
        let d1 = self.slope(i, s + 1, delta);
        let (f0, f1) = (&self.samples[i][s], &self.samples[i][s + 1]);
        let h00 = 2.0 * x.powi(3) - 3.0 * x.powi(2) + 1.0;
        let h10 = x.powi(3) - 2.0 * x.powi(2) + x;
        let h01 = -2.0 * x.powi(3) + 3.0 * x.powi(2);
        let h11 = x.powi(3) - x.powi(2);
        Ok(h00 * f0 + h10 * delta * d0 + h01 * f1 + h11 * delta * d1)
    }

    /// Sup norm over stored data; `window` restricts to times in `[a, b)`.
    pub fn sup_norm(&self, mode: NormMode, window: Option<(f64, f64)>) -> Result<f64> {
        if let Some((a, b)) = window {
            if !(a.is_finite() && b.is_finite()) || b <= a {
                return Err(Error::InvalidArgument(format!("empty window [{a}, {b})")));
            }
        }
        let in_window = |t: f64| window.is_none_or(|(a, b)| t >= a && t < b);
        let mut best: Option<f64> = None;
        for i in 0..self.grid.len() {
            let (a, b) = self.grid.interval(i);
            let last = 2 * self.inner_steps;
            let delta = (b - a) / last as f64;
            match mode {
                NormMode::Value => {
                    for (s, v) in self.samples[i].iter().enumerate() {
                        if in_window(sample_time(a, b, self.inner_steps, s)) {
                            let n = v.norm();
                            best = Some(best.map_or(n, |m: f64| m.max(n)));
                        }
                    }
                }
                NormMode::Derivative => {
                    for s in 0..last {
                        if in_window(sample_time(a, b, self.inner_steps, s)) {
                            let d = (&self.samples[i][s + 1] - &self.samples[i][s]) / delta;
                            let n = d.norm();
                            best = Some(best.map_or(n, |m: f64| m.max(n)));
                        }
                    }
                }
            }
        }
        best.ok_or_else(|| Error::InvalidArgument("window contains no samples".into()))
    }

    /// Pointwise sum with another trajectory on the same layout.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.grid != other.grid || self.dim != other.dim || self.inner_steps != other.inner_steps {
            return Err(Error::InvalidArgument("trajectories live on different layouts".into()));
        }
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(xs, ys)| xs.iter().zip(ys).map(|(x, y)| x + y).collect())
            .collect();
        Self::from_parts(self.grid.clone(), self.dim, self.inner_steps, samples)
    }
}

/// Ordered series terms `u^(0), ..., u^(p)` sharing one sample layout.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSolution {
    terms: Vec<PiecewiseTrajectory>,
}

impl SeriesSolution {
    pub fn new(terms: Vec<PiecewiseTrajectory>) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidArgument("series needs at least the base term".into()))?;
        for t in &terms[1..] {
            if t.grid != first.grid || t.dim != first.dim || t.inner_steps != first.inner_steps {
                return Err(Error::InvalidArgument("series terms live on different layouts".into()));
            }
        }
        Ok(SeriesSolution { terms })
    }

    /// Highest term index.
    pub fn rank(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn terms(&self) -> &[PiecewiseTrajectory] {
        &self.terms
    }

    pub fn term(&self, j: usize) -> &PiecewiseTrajectory {
        &self.terms[j]
    }

    /// Pointwise sum of terms `0..=upto`.
    pub fn partial_sum(&self, upto: usize) -> Result<PiecewiseTrajectory> {
        if upto > self.rank() {
            return Err(Error::InvalidArgument(format!(
                "partial sum rank {upto} exceeds series rank {}",
                self.rank()
            )));
        }
        let mut acc = self.terms[0].clone();
        for t in &self.terms[1..=upto] {
            acc = acc.add(t)?;
        }
        Ok(acc)
    }
}
