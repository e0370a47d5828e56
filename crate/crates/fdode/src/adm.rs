//! Adomian decomposition baseline.
//!
//! Splits the right-hand side `N(t,u)u` into a constant linear part `L u`
//! plus a remainder, then builds series terms on one global interval: the
//! zeroth term solves `u' = L u + phi`, and term `i` solves
//! `u' = L u + A_{i-1}` with the `(i-1)`-th Adomian polynomial of the
//! remainder over all earlier terms as forcing. There is no grid and no
//! discretization parameter, so convergence depends entirely on the
//! problem and the split.

use crate::adomian::adomian_vector_field;
use crate::grid::Grid;
use crate::linalg::{Matrix, Vector};
use crate::linode::{solve_linear_ivp, LinearIvp};
use crate::problem::{PolyVectorField, ProblemSpec};
use crate::trajectory::{PiecewiseTrajectory, SeriesSolution};
use crate::{Error, Result};

/// Baseline run parameters. The default split is the negative identity.
#[derive(Debug, Clone)]
pub struct AdmConfig {
    pub linear_split: Matrix,
    pub rank: usize,
    pub t_end: f64,
    pub inner_steps: usize,
}

impl AdmConfig {
    /// Config with `L = -I`, the conventional splitting.
    pub fn negative_identity(dim: usize, rank: usize, t_end: f64, inner_steps: usize) -> Self {
        AdmConfig {
            linear_split: Matrix::identity(dim, dim) * -1.0,
            rank,
            t_end,
            inner_steps,
        }
    }
}

/// Series terms of the decomposition baseline on `[t0, t_end]`.
pub fn solve(spec: &ProblemSpec, cfg: &AdmConfig) -> Result<SeriesSolution> {
    let m = spec.dim();
    if cfg.linear_split.nrows() != m || cfg.linear_split.ncols() != m {
        return Err(Error::InvalidArgument("linear split must be m x m".into()));
    }
    if cfg.rank > crate::fd::MAX_RANK {
        return Err(Error::Unsupported(format!(
            "rank {} exceeds limit {}",
            cfg.rank,
            crate::fd::MAX_RANK
        )));
    }
    let grid = Grid::from_nodes(spec.t0(), vec![cfg.t_end])?;
    let remainder = PolyVectorField::split_remainder(spec, &cfg.linear_split)?;
    let span = (spec.t0(), cfg.t_end);
    let mut terms: Vec<PiecewiseTrajectory> = Vec::with_capacity(cfg.rank + 1);
    for i in 0..=cfg.rank {
        let samples = {
            let forcing = |t: f64| -> Result<Vector> {
                if i == 0 {
                    Ok(spec.eval_phi(t))
                } else {
                    let values: Vec<Vector> = terms.iter().map(|p| p.eval(t)).collect::<Result<_>>()?;
                    Ok(adomian_vector_field(&remainder, t, &values)?.swap_remove(i - 1))
                }
            };
            let ivp = LinearIvp {
                span,
                coeff: |_| Ok(cfg.linear_split.clone()),
                forcing,
                y0: if i == 0 { spec.u0().clone() } else { Vector::zeros(m) },
                inner_steps: cfg.inner_steps,
            };
            solve_linear_ivp(&ivp)?
        };
        terms.push(PiecewiseTrajectory::from_parts(
            grid.clone(),
            m,
            cfg.inner_steps,
            vec![samples],
        )?);
    }
    SeriesSolution::new(terms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Diverging,
    Converging,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Diverging => write!(f, "diverging"),
            Verdict::Converging => write!(f, "converging"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DivergenceReport {
    pub verdict: Verdict,
    /// Sup norm of each series term over the window.
    pub term_norms: Vec<f64>,
}

/// Classifies the tail behaviour of the series terms over a closed time
/// window: `Diverging` when the last three term norms grow by at least
/// 1.5x each, `Converging` when they shrink by at least 0.75x each.
pub fn divergence_report(sol: &SeriesSolution, window: (f64, f64)) -> Result<DivergenceReport> {
    if sol.rank() < 2 {
        return Err(Error::InvalidArgument("divergence verdict needs rank >= 2".into()));
    }
    let (a, b) = window;
    if !(a.is_finite() && b.is_finite()) || b <= a {
        return Err(Error::InvalidArgument(format!("empty window [{a}, {b}]")));
    }
    let term_norms: Vec<f64> = sol
        .terms()
        .iter()
        .map(|term| {
            let mut worst = 0.0f64;
            let mut seen = false;
            for (t, v) in term.iter_samples() {
                if t >= a && t <= b {
                    worst = worst.max(v.norm());
                    seen = true;
                }
            }
            if seen {
                Ok(worst)
            } else {
                Err(Error::InvalidArgument("window contains no samples".into()))
            }
        })
        .collect::<Result<_>>()?;
    let verdict = classify(&term_norms);
    Ok(DivergenceReport { verdict, term_norms })
}

fn classify(norms: &[f64]) -> Verdict {
    let r = norms.len();
    let (n0, n1, n2) = (norms[r - 3], norms[r - 2], norms[r - 1]);
    if n1 >= 1.5 * n0 && n2 >= 1.5 * n1 {
        Verdict::Diverging
    } else if n1 <= 0.75 * n0 && n2 <= 0.75 * n1 {
        Verdict::Converging
    } else {
        Verdict::Inconclusive
    }
}
