//! Time grids: ordered nodes `t0 < t1 < ... < tn` with maximum step `h`.

use crate::{Error, Result};

/// An ordered grid on `[t0, t_end]`; `nodes` excludes the origin `t0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    t0: f64,
    nodes: Vec<f64>,
    h_max: f64,
}

impl Grid {
    /// Builds a grid from explicit nodes (strictly increasing, first > t0).
    pub fn from_nodes(t0: f64, nodes: Vec<f64>) -> Result<Self> {
        if !t0.is_finite() {
            return Err(Error::InvalidArgument("grid origin must be finite".into()));
        }
        if nodes.is_empty() {
            return Err(Error::InvalidArgument("grid needs at least one node".into()));
        }
        let mut prev = t0;
        let mut h_max = 0.0f64;
        for &t in &nodes {
            if !t.is_finite() || t <= prev {
                return Err(Error::InvalidArgument(format!(
                    "grid nodes must be finite and strictly increasing (got {t} after {prev})"
                )));
            }
            h_max = h_max.max(t - prev);
            prev = t;
        }
        Ok(Grid { t0, nodes, h_max })
    }

    /// Uniform grid with step `h`, ending exactly at `t_end`; the final step
    /// is shortened when `(t_end - t0)/h` is not integral.
    pub fn uniform(t0: f64, t_end: f64, h: f64) -> Result<Self> {
        if !h.is_finite() || h <= 0.0 {
            return Err(Error::InvalidArgument(format!("step must be positive and finite, got {h}")));
        }
        if !t_end.is_finite() || t_end <= t0 {
            return Err(Error::InvalidArgument(format!(
                "need t_end > t0, got [{t0}, {t_end}]"
            )));
        }
        let span = t_end - t0;
        let count = (span / h).floor() as usize;
        let mut nodes: Vec<f64> = (1..=count).map(|k| t0 + k as f64 * h).collect();
        // The last full step may coincide with (or overshoot) t_end up to
        // rounding; the grid always ends exactly at t_end.
        while nodes.last().is_some_and(|&t| t >= t_end - 1e-12 * span.max(1.0)) {
            nodes.pop();
        }
        nodes.push(t_end);
        Self::from_nodes(t0, nodes)
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t_end(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    /// Grid nodes `t1..tn` (excluding the origin).
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Number of intervals.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Maximum step over all intervals (including `t1 - t0`).
    pub fn h_max(&self) -> f64 {
        self.h_max
    }

    /// Endpoints `(a, b)` of interval `i` (0-based).
    pub fn interval(&self, i: usize) -> (f64, f64) {
        let a = if i == 0 { self.t0 } else { self.nodes[i - 1] };
        (a, self.nodes[i])
    }

    /// Index of the interval containing `t` (nodes resolve to the interval
    /// on their left, except `t0` which belongs to interval 0).
    pub fn locate(&self, t: f64) -> Result<usize> {
        if t < self.t0 || t > self.t_end() {
            return Err(Error::OutOfRange {
                t,
                lo: self.t0,
                hi: self.t_end(),
            });
        }
        match self.nodes.binary_search_by(|n| n.partial_cmp(&t).unwrap()) {
            Ok(i) => Ok(i),
            Err(i) => Ok(i.min(self.nodes.len() - 1)),
        }
    }
}
