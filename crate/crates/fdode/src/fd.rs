//! The frozen-coefficient series solver.
//!
//! The solution is approximated by the partial sum
//! `u ≈ u^(0) + u^(1) + ... + u^(p)`. The base term solves, interval by
//! interval, the problem with `N` frozen at the left node; every further
//! term solves a linear problem with the same frozen coefficient, forced
//! by Adomian-polynomial couplings of all earlier terms. Terms join
//! continuously across grid nodes by construction.

use crate::adomian::adomian_matrix;
use crate::grid::Grid;
use crate::linalg::{Matrix, Vector};
use crate::linode::{solve_linear_ivp, LinearIvp};
use crate::problem::ProblemSpec;
use crate::trajectory::{PiecewiseTrajectory, SeriesSolution};
use crate::{Error, Result};

/// Highest rank the solver accepts; beyond this the terms sit under the
/// double-precision noise floor at desk scale.
pub const MAX_RANK: usize = 16;

/// Run parameters: series rank, outer grid, and inner steps per interval.
#[derive(Debug, Clone)]
pub struct FdRunConfig {
    pub rank: usize,
    pub grid: Grid,
    pub inner_steps: usize,
}

impl FdRunConfig {
    pub fn new(rank: usize, grid: Grid, inner_steps: usize) -> Result<Self> {
        if rank > MAX_RANK {
            return Err(Error::Unsupported(format!("rank {rank} exceeds limit {MAX_RANK}")));
        }
        if inner_steps == 0 {
            return Err(Error::InvalidArgument("inner_steps must be at least 1".into()));
        }
        Ok(FdRunConfig {
            rank,
            grid,
            inner_steps,
        })
    }
}

/// Base term: on each interval freeze `c = u(t_left)` and integrate
/// `u' = N(t, c) u + phi(t)`, seeding the next interval with the final
/// value.
pub fn solve_base(spec: &ProblemSpec, grid: &Grid, inner_steps: usize) -> Result<PiecewiseTrajectory> {
    if grid.t0() != spec.t0() {
        return Err(Error::InvalidArgument("grid origin differs from problem t0".into()));
    }
    let mut samples = Vec::with_capacity(grid.len());
    let mut y = spec.u0().clone();
    for i in 0..grid.len() {
        let frozen = y.clone();
        let ivp = LinearIvp {
            span: grid.interval(i),
            coeff: |t| spec.eval_n(t, &frozen),
            forcing: |t| Ok(spec.eval_phi(t)),
            y0: y,
            inner_steps,
        };
        let ivl = solve_linear_ivp(&ivp).map_err(|e| annotate_interval(e, i))?;
        y = ivl.last().unwrap().clone();
        samples.push(ivl);
    }
    PiecewiseTrajectory::from_parts(grid.clone(), spec.dim(), inner_steps, samples)
}

fn annotate_interval(e: Error, i: usize) -> Error {
    match e {
        Error::Overflow { t, context } => Error::Overflow {
            t,
            context: format!("{context} (interval {i})"),
        },
        other => other,
    }
}

/// Matrix whose p-th column is `(∂N/∂u_p)(t, at) · applied_to`.
///
/// With `applied_to = u` and `at = u` this is the nonlinear part of the
/// Jacobian of `u -> N(t,u)u`; inside the correction solves it multiplies
/// the known left value of the unknown term, making it part of the
/// forcing.
pub fn dn_matrix(spec: &ProblemSpec, t: f64, at: &Vector, applied_to: &Vector) -> Result<Matrix> {
    let m = spec.dim();
    if applied_to.len() != m {
        return Err(Error::InvalidArgument("vector length mismatch".into()));
    }
    let mut out = Matrix::zeros(m, m);
    for p in 0..m {
        let col = spec.eval_dn(t, at, p)? * applied_to;
        out.set_column(p, &col);
    }
    Ok(out)
}

/// Coupling forcing for the rank-`j` term at time `t` on `interval`.
///
/// Assembles three groups from the earlier terms `priors = [u^(0)..u^(j-1)]`:
/// frozen-argument Adomian couplings of the mid-rank terms, the
/// freeze-versus-current Adomian differences, and the top-order polynomial
/// with zero last slot acting on the base term.
fn forcing_at(spec: &ProblemSpec, priors: &[PiecewiseTrajectory], j: usize, interval: usize, t: f64) -> Result<Vector> {
    let at_t: Vec<Vector> = priors.iter().map(|p| p.eval(t)).collect::<Result<_>>()?;
    let mut frozen_zero: Vec<Vector> = priors.iter().map(|p| p.left_value(interval).clone()).collect();
    frozen_zero.push(Vector::zeros(spec.dim()));
    // series over current values, orders 0..j-1
    let series_t = adomian_matrix(spec, t, &at_t)?;
    // series over frozen values with a zero top slot, orders 0..j
    let series_z = adomian_matrix(spec, t, &frozen_zero)?;
    let mut out = Vector::zeros(spec.dim());
    for p in 1..j {
        out += &series_z[j - p] * &at_t[p];
    }
    for (p, at_p) in at_t.iter().enumerate() {
        let k = j - 1 - p;
        out += (&series_t[k] - &series_z[k]) * at_p;
    }
    out += &series_z[j] * &at_t[0];
    Ok(out)
}

/// Sampled coupling forcing on the stored layout of `interval`.
pub fn correction_forcing(
    spec: &ProblemSpec,
    priors: &[PiecewiseTrajectory],
    j: usize,
    interval: usize,
) -> Result<Vec<Vector>> {
    check_priors(spec, priors, j)?;
    let base = &priors[0];
    if interval >= base.grid().len() {
        return Err(Error::InvalidArgument(format!("interval {interval} out of range")));
    }
    (0..base.samples_per_interval())
        .map(|s| forcing_at(spec, priors, j, interval, base.interval_time(interval, s)))
        .collect()
}

fn check_priors(spec: &ProblemSpec, priors: &[PiecewiseTrajectory], j: usize) -> Result<()> {
    if j == 0 || priors.len() != j {
        return Err(Error::InvalidArgument(format!(
            "rank {j} correction needs exactly {j} earlier terms, got {}",
            priors.len()
        )));
    }
    let base = &priors[0];
    for p in priors {
        if p.dim() != spec.dim() || p.grid() != base.grid() || p.inner_steps() != base.inner_steps() {
            return Err(Error::InvalidArgument("earlier terms live on inconsistent layouts".into()));
        }
    }
    Ok(())
}

/// Rank-`j` term: interval by interval, integrate
/// `v' = N(t, c) v + D(t) v_left + F_j(t)` where `c` is the frozen base
/// value, `D` the [`dn_matrix`] forcing with the base trajectory, and
/// `v_left` the known junction value (zero on the first interval).
pub fn solve_correction(
    spec: &ProblemSpec,
    grid: &Grid,
    priors: &[PiecewiseTrajectory],
    j: usize,
    inner_steps: usize,
) -> Result<PiecewiseTrajectory> {
    check_priors(spec, priors, j)?;
    let base = &priors[0];
    if base.grid() != grid || base.inner_steps() != inner_steps {
        return Err(Error::InvalidArgument("grid/layout mismatch with earlier terms".into()));
    }
    let mut samples = Vec::with_capacity(grid.len());
    let mut y = Vector::zeros(spec.dim());
    for i in 0..grid.len() {
        let frozen = base.left_value(i).clone();
        let left = y.clone();
        let ivp = LinearIvp {
            span: grid.interval(i),
            coeff: |t| spec.eval_n(t, &frozen),
            forcing: |t| {
                let coupling = dn_matrix(spec, t, &frozen, &base.eval(t)?)? * &left;
                Ok(coupling + forcing_at(spec, priors, j, i, t)?)
            },
            y0: y,
            inner_steps,
        };
        let ivl = solve_linear_ivp(&ivp).map_err(|e| annotate_interval(e, i))?;
        y = ivl.last().unwrap().clone();
        samples.push(ivl);
    }
    PiecewiseTrajectory::from_parts(grid.clone(), spec.dim(), inner_steps, samples)
}

/// Full series solve: base term plus `rank` correction terms.
pub fn solve(spec: &ProblemSpec, config: &FdRunConfig) -> Result<SeriesSolution> {
    if config.rank > MAX_RANK {
        return Err(Error::Unsupported(format!("rank {} exceeds limit {MAX_RANK}", config.rank)));
    }
    let mut terms = vec![solve_base(spec, &config.grid, config.inner_steps)?];
    for j in 1..=config.rank {
        let term = solve_correction(spec, &config.grid, &terms, j, config.inner_steps)?;
        terms.push(term);
    }
    SeriesSolution::new(terms)
}

/// Sup over all samples of `|du/dt - N(t,u)u - phi(t)|`, with `du/dt`
/// from 4th-order finite differences per interval (one-sided at interval
/// ends, so junction kinks are never differenced across).
pub fn residual(spec: &ProblemSpec, traj: &PiecewiseTrajectory) -> Result<f64> {
    let per = traj.samples_per_interval();
    if per < 5 {
        return Err(Error::InvalidArgument(
            "residual needs at least 5 samples per interval (inner_steps >= 2)".into(),
        ));
    }
    let mut worst = 0.0f64;
    for i in 0..traj.grid().len() {
        let (a, b) = traj.grid().interval(i);
        let delta = (b - a) / (per - 1) as f64;
        let f = traj.interval_samples(i);
        let last = per - 1;
        for s in 0..per {
            let d = if s == 0 {
                (-25.0 * &f[0] + 48.0 * &f[1] - 36.0 * &f[2] + 16.0 * &f[3] - 3.0 * &f[4]) / (12.0 * delta)
            } else if s == 1 {
                (-3.0 * &f[0] - 10.0 * &f[1] + 18.0 * &f[2] - 6.0 * &f[3] + &f[4]) / (12.0 * delta)
            } else if s == last - 1 {
                (3.0 * &f[last] + 10.0 * &f[last - 1] - 18.0 * &f[last - 2] + 6.0 * &f[last - 3]
                    - &f[last - 4])
                    / (12.0 * delta)
            } else if s == last {
                (25.0 * &f[last] - 48.0 * &f[last - 1] + 36.0 * &f[last - 2] - 16.0 * &f[last - 3]
                    + 3.0 * &f[last - 4])
                    / (12.0 * delta)
            } else {
                (&f[s - 2] - 8.0 * &f[s - 1] + 8.0 * &f[s + 1] - &f[s + 2]) / (12.0 * delta)
            };
            let t = traj.interval_time(i, s);
            let defect = d - spec.eval_n(t, &f[s])? * &f[s] - spec.eval_phi(t);
            worst = worst.max(defect.norm());
        }
    }
    Ok(worst)
}

/// Sup over stored samples of the deviation from the exact solution, when
/// the problem carries one.
pub fn sup_error_vs_exact(spec: &ProblemSpec, traj: &PiecewiseTrajectory) -> Option<f64> {
    if !spec.has_exact() {
        return None;
    }
    let mut worst = 0.0f64;
    for (t, v) in traj.iter_samples() {
        let exact = spec.eval_exact(t)?;
        worst = worst.max((v - exact).norm());
    }
    Some(worst)
}

/// Least-squares geometric decay ratio of an error sequence: the slope of
/// `log(err)` against the index, reported as `exp(slope)`. A value below
/// one means the sequence shrinks geometrically.
pub fn geometric_rate(errors: &[f64]) -> Result<f64> {
    if errors.len() < 3 {
        return Err(Error::InvalidArgument("need at least 3 error values".into()));
    }
    if errors.iter().any(|&e| !(e.is_finite() && e > 0.0)) {
        return Err(Error::InvalidArgument("errors must be positive and finite".into()));
    }
    let n = errors.len() as f64;
    let mean_x = (errors.len() as f64 - 1.0) / 2.0;
    let mean_y = errors.iter().map(|e| e.ln()).sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (k, &e) in errors.iter().enumerate() {
        let dx = k as f64 - mean_x;
        num += dx * (e.ln() - mean_y);
        den += dx * dx;
    }
    Ok((num / den).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adomian::partition;
    use crate::builtins;
    use crate::linode;
    use crate::trajectory::NormMode;

    fn paper() -> ProblemSpec {
        builtins::load("paper_example").unwrap()
    }

    fn vec2(a: f64, b: f64) -> Vector {
        Vector::from_vec(vec![a, b])
    }

    #[test]
    fn base_equals_reference_for_linear_problem() {
        // freezing is a no-op when N does not depend on u
        let spec = builtins::load("linear_decay").unwrap();
        let grid = Grid::uniform(0.0, 2.0, 0.4).unwrap();
        let base = solve_base(&spec, &grid, 8).unwrap();
        let reference = linode::reference_solve(&spec, &grid, 8, 1e-10).unwrap();
        for i in 0..grid.len() {
            for (x, y) in base.interval_samples(i).iter().zip(reference.interval_samples(i)) {
                assert!((x - y).norm() < 1e-7);
            }
        }
    }

    #[test]
    fn base_paper_stays_under_solution_bound() {
        let spec = paper();
        let grid = Grid::uniform(0.0, 6.0, 0.2).unwrap();
        let base = solve_base(&spec, &grid, 16).unwrap();
        let sup = base.sup_norm(NormMode::Value, None).unwrap();
        // mu = max(|u0|, kappa/alpha) + eps1 with kappa = 2.9, alpha = 0.465
        assert!(sup <= 6.34, "base sup norm {sup}");
    }

    #[test]
    fn base_self_convergence_is_first_order() {
        let spec = builtins::load("cubic_1d").unwrap();
        let sol_at = |h: f64| {
            let grid = Grid::uniform(0.0, 1.0, h).unwrap();
            solve_base(&spec, &grid, 8).unwrap()
        };
        let (c1, c2, c3) = (sol_at(0.1), sol_at(0.05), sol_at(0.025));
        let diff = |x: &PiecewiseTrajectory, y: &PiecewiseTrajectory| {
            let mut worst = 0.0f64;
            for (t, v) in x.iter_samples() {
                worst = worst.max((v - y.eval(t).unwrap()).norm());
            }
            worst
        };
        let (d12, d23) = (diff(&c1, &c2), diff(&c2, &c3));
        let ratio = d12 / d23;
        assert!((1.4..=2.9).contains(&ratio), "O(h) self-convergence ratio {ratio}");
    }

    #[test]
    fn dn_matrix_vanishes_for_linear_problems() {
        let spec = builtins::load("linear_decay").unwrap();
        let d = dn_matrix(&spec, 0.3, &vec2(1.0, 2.0), &vec2(0.5, -0.5)).unwrap();
        assert_eq!(d.norm(), 0.0);
    }

    #[test]
    fn dn_matrix_is_linear_in_applied_vector() {
        let spec = paper();
        let at = vec2(0.2, -0.7);
        let b = vec2(0.4, 1.1);
        let one = dn_matrix(&spec, 0.0, &at, &b).unwrap();
        let two = dn_matrix(&spec, 0.0, &at, &(&b * 2.0)).unwrap();
        assert!((&one * 2.0 - two).norm() < 1e-14);
    }

    #[test]
    fn dn_matrix_columns_match_finite_differences() {
        let spec = paper();
        let at = vec2(0.0, 1.0);
        let b = vec2(1.0, 0.0);
        let d = dn_matrix(&spec, 0.0, &at, &b).unwrap();
        let eps = 1e-5;
        for p in 0..2 {
            let mut hi = at.clone();
            let mut lo = at.clone();
            hi[p] += eps;
            lo[p] -= eps;
            let col = (spec.eval_n(0.0, &hi).unwrap() - spec.eval_n(0.0, &lo).unwrap()) / (2.0 * eps) * &b;
            assert!((d.column(p) - col).norm() < 1e-8, "column {p}");
        }
    }

    #[test]
    fn first_correction_forcing_reduces_to_coefficient_difference() {
        let spec = paper();
        let grid = Grid::uniform(0.0, 1.0, 0.2).unwrap();
        let base = solve_base(&spec, &grid, 4).unwrap();
        for interval in [0usize, 3] {
            let forcing = correction_forcing(&spec, std::slice::from_ref(&base), 1, interval).unwrap();
            for (s, got) in forcing.iter().enumerate() {
                let t = base.interval_time(interval, s);
                let u_t = base.eval(t).unwrap();
                let u_frozen = base.left_value(interval);
                let want =
                    (spec.eval_n(t, &u_t).unwrap() - spec.eval_n(t, u_frozen).unwrap()) * &u_t;
                assert!((got - want).norm() < 1e-12, "interval {interval}, sample {s}");
            }
        }
    }

    #[test]
    fn correction_forcing_vanishes_for_linear_problems() {
        let spec = builtins::load("linear_decay").unwrap();
        let grid = Grid::uniform(0.0, 1.0, 0.25).unwrap();
        let base = solve_base(&spec, &grid, 4).unwrap();
        let u1 = solve_correction(&spec, &grid, std::slice::from_ref(&base), 1, 4).unwrap();
        for j in 1..=2usize {
            let priors: Vec<_> = [base.clone(), u1.clone()][..j].to_vec();
            for interval in 0..grid.len() {
                for v in correction_forcing(&spec, &priors, j, interval).unwrap() {
                    assert_eq!(v.norm(), 0.0);
                }
            }
        }
    }

    /// Second-rank forcing against a direct assembly that recomputes every
    /// Adomian polynomial with the partition-sum oracle.
    #[test]
    fn second_correction_forcing_matches_independent_assembly() {
        let spec = paper();
        let grid = Grid::uniform(0.0, 0.6, 0.2).unwrap();
        let base = solve_base(&spec, &grid, 4).unwrap();
        let u1 = solve_correction(&spec, &grid, std::slice::from_ref(&base), 1, 4).unwrap();
        let priors = vec![base.clone(), u1.clone()];
        let j = 2usize;
        let interval = 0usize;
        let forcing = correction_forcing(&spec, &priors, j, interval).unwrap();
        for (s, got) in forcing.iter().enumerate() {
            let t = base.interval_time(interval, s);
            let frozen: Vec<Vector> = priors.iter().map(|p| p.left_value(interval).clone()).collect();
            let current: Vec<Vector> = priors.iter().map(|p| p.eval(t).unwrap()).collect();
            let mut want = Vector::zeros(2);
            // first group: p = 1..j-1
            for p in 1..j {
                let a = partition::adomian_matrix(&spec, t, &frozen[..=j - p]).unwrap();
                want += &a[j - p] * &current[p];
            }
            // second group: difference of polynomials at current vs frozen
            for p in 0..j {
                let k = j - 1 - p;
                let a_cur = partition::adomian_matrix(&spec, t, &current[..=k]).unwrap();
                let a_fro = partition::adomian_matrix(&spec, t, &frozen[..=k]).unwrap();
                want += (&a_cur[k] - &a_fro[k]) * &current[p];
            }
            // third group: top order with zero last slot
            let mut with_zero = frozen.clone();
            with_zero.push(Vector::zeros(2));
            let a_top = partition::adomian_matrix(&spec, t, &with_zero).unwrap();
            want += &a_top[j] * &current[0];
            assert!((got - &want).norm() < 1e-12, "sample {s}");
        }
    }

    #[test]
    fn corrections_are_exactly_zero_for_linear_problems() {
        let spec = builtins::load("linear_decay").unwrap();
        let grid = Grid::uniform(0.0, 2.0, 0.5).unwrap();
        let config = FdRunConfig::new(4, grid, 8).unwrap();
        let sol = solve(&spec, &config).unwrap();
        for j in 1..=4 {
            for i in 0..sol.term(j).grid().len() {
                for v in sol.term(j).interval_samples(i) {
                    assert!(v.iter().all(|&x| x == 0.0), "term {j} not bitwise zero");
                }
            }
        }
        // and the partial sum equals the closed form
        let sum = sol.partial_sum(4).unwrap();
        for (t, v) in sum.iter_samples() {
            assert!((v[0] - (-t).exp()).abs() < 1e-7);
            assert!(v[1].abs() < 1e-12);
        }
    }

    #[test]
    fn first_correction_matches_adaptive_oracle_on_first_interval() {
        let spec = paper();
        let grid = Grid::uniform(0.0, 1.0, 0.2).unwrap();
        let base = solve_base(&spec, &grid, 16).unwrap();
        let u1 = solve_correction(&spec, &grid, std::slice::from_ref(&base), 1, 16).unwrap();
        // integrate the same linear interval problem adaptively
        let frozen = base.left_value(0).clone();
        let f = |t: f64, y: &Vector| -> Result<Vector> {
            let forcing = forcing_at(&spec, std::slice::from_ref(&base), 1, 0, t)?;
            Ok(spec.eval_n(t, &frozen)? * y + forcing)
        };
        let targets: Vec<f64> = (1..=8).map(|k| 0.2 * k as f64 / 8.0).collect();
        let oracle = linode::integrate_adaptive(f, 0.0, &Vector::zeros(2), &targets, 1e-11).unwrap();
        for (k, want) in oracle.iter().enumerate() {
            let got = u1.eval(targets[k]).unwrap();
            assert!((got - want).norm() < 1e-8, "at target {k}");
        }
    }

    #[test]
    fn correction_starts_at_zero() {
        let spec = paper();
        let grid = Grid::uniform(0.0, 1.0, 0.2).unwrap();
        let config = FdRunConfig::new(3, grid, 8).unwrap();
        let sol = solve(&spec, &config).unwrap();
        for j in 1..=3 {
            assert!(sol.term(j).left_value(0).iter().all(|&x| x == 0.0));
        }
    }

    #[test]
    fn rank_zero_solve_has_single_term() {
        let spec = paper();
        let config = FdRunConfig::new(0, Grid::uniform(0.0, 1.0, 0.5).unwrap(), 4).unwrap();
        let sol = solve(&spec, &config).unwrap();
        assert_eq!(sol.rank(), 0);
        assert_eq!(sol.terms().len(), 1);
    }

    #[test]
    fn rank_limit_enforced() {
        assert!(FdRunConfig::new(17, Grid::uniform(0.0, 1.0, 0.5).unwrap(), 4).is_err());
    }

    #[test]
    fn paper_errors_decrease_in_rank() {
        let spec = paper();
        let grid = Grid::uniform(0.0, 6.0, 0.2).unwrap();
        let config = FdRunConfig::new(4, grid, 16).unwrap();
        let sol = solve(&spec, &config).unwrap();
        let mut errors = Vec::new();
        for q in 0..=4 {
            let sum = sol.partial_sum(q).unwrap();
            errors.push(sup_error_vs_exact(&spec, &sum).unwrap());
        }
        for q in 1..=4 {
            assert!(errors[q] < errors[q - 1], "errors {errors:?}");
        }
        let rate = geometric_rate(&errors).unwrap();
        assert!(rate < 1.0, "geometric rate {rate}");
    }

    #[test]
    fn residual_of_exact_solution_is_small() {
        let spec = paper();
        let grid = Grid::uniform(0.0, 6.0, 0.2).unwrap();
        let exact = PiecewiseTrajectory::sample_from_fn(grid, 16, |t| vec2(t.sin(), t.cos())).unwrap();
        let r = residual(&spec, &exact).unwrap();
        assert!(r <= 1e-5, "residual {r}");
    }

    #[test]
    fn residual_of_reference_solution_is_small() {
        let spec = paper();
        let grid = Grid::uniform(0.0, 3.0, 0.2).unwrap();
        let reference = linode::reference_solve(&spec, &grid, 16, 1e-10).unwrap();
        let r = residual(&spec, &reference).unwrap();
        assert!(r <= 1e-5, "residual {r}");
    }

    #[test]
    fn residual_drops_with_rank() {
        let spec = paper();
        let grid = Grid::uniform(0.0, 2.0, 0.2).unwrap();
        let config = FdRunConfig::new(4, grid, 16).unwrap();
        let sol = solve(&spec, &config).unwrap();
        let r0 = residual(&spec, &sol.partial_sum(0).unwrap()).unwrap();
        let r4 = residual(&spec, &sol.partial_sum(4).unwrap()).unwrap();
        assert!(r4 < r0 / 100.0, "r0 = {r0}, r4 = {r4}");
    }

    #[test]
    fn residual_needs_enough_samples() {
        let spec = paper();
        let grid = Grid::uniform(0.0, 1.0, 0.5).unwrap();
        let traj = PiecewiseTrajectory::sample_from_fn(grid, 1, |t| vec2(t.sin(), t.cos())).unwrap();
        assert!(residual(&spec, &traj).is_err());
    }

    #[test]
    fn error_vs_exact_basics() {
        let spec = paper();
        let grid = Grid::uniform(0.0, 2.0, 0.5).unwrap();
        let exact = PiecewiseTrajectory::sample_from_fn(grid.clone(), 4, |t| vec2(t.sin(), t.cos())).unwrap();
        assert_eq!(sup_error_vs_exact(&spec, &exact), Some(0.0));
        let no_exact = builtins::load("cubic_1d").unwrap();
        let traj = PiecewiseTrajectory::sample_from_fn(grid, 4, |_| Vector::zeros(1)).unwrap();
        assert_eq!(sup_error_vs_exact(&no_exact, &traj), None);
    }

    #[test]
    fn geometric_rate_of_exact_sequence() {
        let rate = geometric_rate(&[1.0, 0.1, 0.01, 0.001]).unwrap();
        assert!((rate - 0.1).abs() < 1e-12);
        assert!(geometric_rate(&[1.0, 0.5]).is_err());
        assert!(geometric_rate(&[1.0, 0.0, 0.1]).is_err());
        assert!(geometric_rate(&[1.0, -0.5, 0.1]).is_err());
    }
}
