//! Linear interval problems and reference integration.
//!
//! [`solve_linear_ivp`] integrates `y' = M(t) y + g(t)` over one interval
//! with classical fixed-step RK4, producing the `2M + 1` sample layout
//! (nodes plus midpoints) used by every trajectory in this crate. Node
//! values come from the node-to-node RK4 march, whose stages land exactly
//! on stored sample times; each midpoint sample is produced by an extra
//! RK4 half-step from its left node.
//!
//! [`reference_solve`] is an independent oracle: an adaptive embedded
//! Dormand-Prince 5(4) integrator applied to the full nonlinear problem,
//! resampled onto a requested grid layout.

use crate::grid::Grid;
use crate::linalg::{all_finite, Matrix, Vector};
use crate::problem::ProblemSpec;
use crate::trajectory::{sample_time, PiecewiseTrajectory};
use crate::{Error, Result};

/// One linear interval problem `y' = coeff(t) y + forcing(t)`, `y(a) = y0`.
pub struct LinearIvp<C, G>
where
    C: Fn(f64) -> Result<Matrix>,
    G: Fn(f64) -> Result<Vector>,
{
    pub span: (f64, f64),
    pub coeff: C,
    pub forcing: G,
    pub y0: Vector,
    pub inner_steps: usize,
}

fn rk4_step<F>(f: &F, t0: f64, t_mid: f64, t1: f64, y: &Vector) -> Result<Vector>
where
    F: Fn(f64, &Vector) -> Result<Vector>,
{
    let h = t1 - t0;
    let k1 = f(t0, y)?;
    let k2 = f(t_mid, &(y + &k1 * (h / 2.0)))?;
    let k3 = f(t_mid, &(y + &k2 * (h / 2.0)))?;
    let k4 = f(t1, &(y + &k3 * h))?;
    Ok(y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0))
}

/// RK4 solution sampled at nodes and midpoints (`2M + 1` vectors).
pub fn solve_linear_ivp<C, G>(ivp: &LinearIvp<C, G>) -> Result<Vec<Vector>>
where
    C: Fn(f64) -> Result<Matrix>,
    G: Fn(f64) -> Result<Vector>,
{
    let (a, b) = ivp.span;
    if !(a.is_finite() && b.is_finite()) || b <= a {
        return Err(Error::InvalidArgument(format!("bad interval [{a}, {b}]")));
    }
    if ivp.inner_steps == 0 {
        return Err(Error::InvalidArgument("inner_steps must be at least 1".into()));
    }
    let m = ivp.inner_steps;
    let f = |t: f64, y: &Vector| -> Result<Vector> { Ok((ivp.coeff)(t)? * y + (ivp.forcing)(t)?) };
    let mut samples = Vec::with_capacity(2 * m + 1);
    samples.push(ivp.y0.clone());
    let mut y = ivp.y0.clone();
    for k in 0..m {
        let t0 = sample_time(a, b, m, 2 * k);
        let t_mid = sample_time(a, b, m, 2 * k + 1);
        let t1 = sample_time(a, b, m, 2 * k + 2);
        // midpoint sample: extra half-step from the left node
        let quarter = t0 + (t_mid - t0) / 2.0;
        let y_mid = rk4_step(&f, t0, quarter, t_mid, &y)?;
        if !all_finite(&y_mid) {
            return Err(Error::Overflow {
                t: t_mid,
                context: "integrating linear interval problem".into(),
            });
        }
        samples.push(y_mid);
        y = rk4_step(&f, t0, t_mid, t1, &y)?;
        if !all_finite(&y) {
            return Err(Error::Overflow {
                t: t1,
                context: "integrating linear interval problem".into(),
            });
        }
        samples.push(y.clone());
    }
    Ok(samples)
}

/// Fundamental matrix `U(t)` of `U' = M(t) U`, `U(a) = I`, sampled on the
/// standard layout.
#[derive(Debug, Clone)]
pub struct FundamentalMatrix {
    span: (f64, f64),
    inner_steps: usize,
    samples: Vec<Matrix>,
}

impl FundamentalMatrix {
    pub fn span(&self) -> (f64, f64) {
        self.span
    }

    pub fn samples(&self) -> &[Matrix] {
        &self.samples
    }

    pub fn sample_time(&self, s: usize) -> f64 {
        sample_time(self.span.0, self.span.1, self.inner_steps, s)
    }

    /// State-transition matrix between two sample times,
    /// `K(t_s, t_r) = U(t_s) U(t_r)^{-1}` (diagnostic use).
    pub fn transition(&self, s: usize, r: usize) -> Result<Matrix> {
        let inv = self.samples[r]
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::NumericalFailure("fundamental matrix sample not invertible".into()))?;
        Ok(&self.samples[s] * inv)
    }
}

/// Columnwise integration of the homogeneous problem for each unit basis
/// vector.
pub fn fundamental_matrix<C>(span: (f64, f64), coeff: C, inner_steps: usize) -> Result<FundamentalMatrix>
where
    C: Fn(f64) -> Result<Matrix>,
{
    let probe = coeff(span.0)?;
    let m = probe.nrows();
    if probe.ncols() != m || m == 0 {
        return Err(Error::InvalidArgument("coefficient must be square".into()));
    }
    let mut columns = Vec::with_capacity(m);
    for j in 0..m {
        let mut e = Vector::zeros(m);
        e[j] = 1.0;
        let ivp = LinearIvp {
            span,
            coeff: &coeff,
            forcing: |_| Ok(Vector::zeros(m)),
            y0: e,
            inner_steps,
        };
        columns.push(solve_linear_ivp(&ivp)?);
    }
    let count = 2 * inner_steps + 1;
    let mut samples = Vec::with_capacity(count);
    for s in 0..count {
        let u = Matrix::from_fn(m, m, |r, c| columns[c][s][r]);
        let det = u.determinant();
        if det == 0.0 || !det.is_finite() {
            return Err(Error::NumericalFailure(format!(
                "fundamental matrix is singular at sample {s}"
            )));
        }
        samples.push(u);
    }
    Ok(FundamentalMatrix {
        span,
        inner_steps,
        samples,
    })
}

// Dormand-Prince 5(4) coefficients.
const DP_C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const DP_A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const DP_B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const DP_B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Adaptive Dormand-Prince 5(4) integration of `y' = f(t, y)` reporting
/// the state at each of the strictly increasing `targets`.
pub fn integrate_adaptive<F>(f: F, t0: f64, y0: &Vector, targets: &[f64], tol: f64) -> Result<Vec<Vector>>
where
    F: Fn(f64, &Vector) -> Result<Vector>,
{
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let mut out = Vec::with_capacity(targets.len());
    let mut t = t0;
    let mut y = y0.clone();
    let dim = y.len();
    let mut h: f64 = targets.last().map_or(1.0, |&tf| (tf - t0) / 100.0).max(1e-10);
    for &target in targets {
        if target < t {
            return Err(Error::InvalidArgument("targets must be increasing".into()));
        }
        if target == t {
            out.push(y.clone());
            continue;
        }
        while t < target {
            let clipped = target - t <= h;
            let step = if clipped { target - t } else { h };
            let mut k: Vec<Vector> = Vec::with_capacity(7);
            for i in 0..7 {
                let mut yi = y.clone();
                for (j, kj) in k.iter().enumerate() {
                    if DP_A[i][j] != 0.0 {
                        yi += kj * (step * DP_A[i][j]);
                    }
                }
                k.push(f(t + DP_C[i] * step, &yi)?);
            }
            let mut y5 = y.clone();
            let mut err = Vector::zeros(dim);
            for i in 0..7 {
                if DP_B5[i] != 0.0 {
                    y5 += &k[i] * (step * DP_B5[i]);
                }
                let diff = DP_B5[i] - DP_B4[i];
                if diff != 0.0 {
                    err += &k[i] * (step * diff);
                }
            }
            if !all_finite(&y5) {
                return Err(Error::Overflow {
                    t,
                    context: "adaptive reference integration".into(),
                });
            }
            let mut err_norm = 0.0f64;
            for i in 0..dim {
                let scale = tol + tol * y[i].abs().max(y5[i].abs());
                err_norm += (err[i] / scale).powi(2);
            }
            err_norm = (err_norm / dim as f64).sqrt();
            if err_norm <= 1.0 {
                t = if clipped { target } else { t + step };
                y = y5;
                if !clipped {
                    h = step * (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0);
                }
            } else {
                h = step * (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0);
            }
            if h < 1e-14 * t.abs().max(1.0) {
                return Err(Error::StepUnderflow { t });
            }
        }
        out.push(y.clone());
    }
    Ok(out)
}

/// High-accuracy adaptive solution of the nonlinear problem
/// `u' = N(t,u)u + phi(t)`, resampled onto the grid/inner layout.
pub fn reference_solve(spec: &ProblemSpec, grid: &Grid, inner_steps: usize, tol: f64) -> Result<PiecewiseTrajectory> {
    if !(1e-12..=1e-3).contains(&tol) {
        return Err(Error::InvalidArgument(format!(
            "reference tolerance {tol} outside [1e-12, 1e-3]"
        )));
    }
    if grid.t0() != spec.t0() {
        return Err(Error::InvalidArgument("grid origin differs from problem t0".into()));
    }
    let f = |t: f64, u: &Vector| -> Result<Vector> { Ok(spec.eval_n(t, u)? * u + spec.eval_phi(t)) };
    // target times: all samples, junctions once
    let per = 2 * inner_steps + 1;
    let mut targets = Vec::with_capacity(grid.len() * (per - 1) + 1);
    for i in 0..grid.len() {
        let (a, b) = grid.interval(i);
        let skip = usize::from(i > 0);
        for s in skip..per {
            targets.push(sample_time(a, b, inner_steps, s));
        }
    }
    let states = integrate_adaptive(f, spec.t0(), spec.u0(), &targets, tol)?;
    let mut samples: Vec<Vec<Vector>> = Vec::with_capacity(grid.len());
    let mut idx = 0;
    for i in 0..grid.len() {
        let mut ivl = Vec::with_capacity(per);
        if i > 0 {
            let prev: &Vec<Vector> = &samples[i - 1];
            ivl.push(prev[per - 1].clone());
        } else {
            ivl.push(spec.u0().clone());
            idx += 1;
        }
        for _ in 1..per {
            ivl.push(states[idx].clone());
            idx += 1;
        }
        samples.push(ivl);
    }
    PiecewiseTrajectory::from_parts(grid.clone(), spec.dim(), inner_steps, samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    fn vec2(a: f64, b: f64) -> Vector {
        Vector::from_vec(vec![a, b])
    }

    #[test]
    fn zero_problem_stays_constant() {
        let ivp = LinearIvp {
            span: (0.0, 1.0),
            coeff: |_| Ok(Matrix::zeros(2, 2)),
            forcing: |_| Ok(Vector::zeros(2)),
            y0: vec2(2.0, -1.0),
            inner_steps: 4,
        };
        let samples = solve_linear_ivp(&ivp).unwrap();
        assert_eq!(samples.len(), 9);
        for s in samples {
            assert_eq!(s, vec2(2.0, -1.0));
        }
    }

    #[test]
    fn exponential_decay_matches_closed_form() {
        let ivp = LinearIvp {
            span: (0.0, 1.0),
            coeff: |_| Ok(Matrix::identity(2, 2) * -1.0),
            forcing: |_| Ok(Vector::zeros(2)),
            y0: vec2(1.0, 0.0),
            inner_steps: 16,
        };
        let samples = solve_linear_ivp(&ivp).unwrap();
        let last = samples.last().unwrap();
        assert!((last[0] - (-1.0f64).exp()).abs() < 1e-7);
        assert!(last[1].abs() < 1e-12);
    }

    #[test]
    fn rotation_matches_closed_form() {
        let ivp = LinearIvp {
            span: (0.0, 1.0),
            coeff: |_| Ok(Matrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0])),
            forcing: |_| Ok(Vector::zeros(2)),
            y0: vec2(0.0, 1.0),
            inner_steps: 16,
        };
        let samples = solve_linear_ivp(&ivp).unwrap();
        let last = samples.last().unwrap();
        assert!((last[0] - 1.0f64.sin()).abs() < 1e-7);
        assert!((last[1] - 1.0f64.cos()).abs() < 1e-7);
    }

    #[test]
    fn midpoint_samples_are_fourth_order() {
        let err_at = |inner: usize| {
            let ivp = LinearIvp {
                span: (0.0, 1.0),
                coeff: |_| Ok(Matrix::from_row_slice(1, 1, &[-2.0])),
                forcing: |t: f64| Ok(Vector::from_vec(vec![t.sin()])),
                y0: Vector::from_vec(vec![1.0]),
                inner_steps: inner,
            };
            let samples = solve_linear_ivp(&ivp).unwrap();
            // closed form of y' = -2y + sin t, y(0) = 1
            let exact = |t: f64| {
                let c = 1.0 + 1.0 / 5.0;
                c * (-2.0 * t).exp() + (2.0 * t.sin() - t.cos()) / 5.0
            };
            let mut worst = 0.0f64;
            for (s, v) in samples.iter().enumerate() {
                let t = sample_time(0.0, 1.0, inner, s);
                worst = worst.max((v[0] - exact(t)).abs());
            }
            worst
        };
        let (e1, e2) = (err_at(8), err_at(16));
        let ratio = e1 / e2;
        assert!((12.0..=20.0).contains(&ratio), "order ratio {ratio}");
    }

    #[test]
    fn overflow_is_diagnosed_with_time() {
        let ivp = LinearIvp {
            span: (0.0, 1000.0),
            coeff: |_| Ok(Matrix::from_row_slice(1, 1, &[10.0])),
            forcing: |_| Ok(Vector::zeros(1)),
            y0: Vector::from_vec(vec![1.0]),
            inner_steps: 64,
        };
        match solve_linear_ivp(&ivp) {
            Err(Error::Overflow { t, .. }) => assert!(t > 0.0),
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn fundamental_matrix_identity_for_zero_coefficient() {
        let fm = fundamental_matrix((0.0, 2.0), |_| Ok(Matrix::zeros(3, 3)), 4).unwrap();
        assert_eq!(fm.samples().first().unwrap(), &Matrix::identity(3, 3));
        for s in fm.samples() {
            assert!((s - Matrix::identity(3, 3)).norm() < 1e-14);
        }
    }

    #[test]
    fn fundamental_matrix_diagonal_exponentials() {
        let fm = fundamental_matrix(
            (0.0, 1.0),
            |_| Ok(Matrix::from_diagonal(&vec2(-1.0, -2.0))),
            16,
        )
        .unwrap();
        let last = fm.samples().last().unwrap();
        assert!((last[(0, 0)] - (-1.0f64).exp()).abs() < 1e-7);
        assert!((last[(1, 1)] - (-2.0f64).exp()).abs() < 1e-7);
        assert!(last[(0, 1)].abs() < 1e-14 && last[(1, 0)].abs() < 1e-14);
    }

    #[test]
    fn transition_matrix_composes() {
        let fm = fundamental_matrix(
            (0.0, 1.0),
            |t: f64| Ok(Matrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, -0.1 * t])),
            8,
        )
        .unwrap();
        // K(t, t) = I and K(t2, t0) = K(t2, t1) K(t1, t0)
        let k_ss = fm.transition(5, 5).unwrap();
        assert!((k_ss - Matrix::identity(2, 2)).norm() < 1e-12);
        let k20 = fm.transition(10, 0).unwrap();
        let k21 = fm.transition(10, 4).unwrap();
        let k10 = fm.transition(4, 0).unwrap();
        assert!((k20 - k21 * k10).norm() < 1e-10);
    }

    #[test]
    fn dissipative_decay_bound() {
        // M(t) = S(t) - shift*I with S skewish; quadratic form bounded by
        // -alpha |v|^2, so |U(t)| <= exp(-alpha (t - a)).
        let alpha = 0.7;
        let coeff = |t: f64| {
            let s = Matrix::from_row_slice(2, 2, &[0.0, 1.0 + 0.3 * t.sin(), -1.0, 0.0]);
            let sym = crate::linalg::symmetric_part(&s);
            let shift = crate::linalg::symmetric_lambda_max(&sym).unwrap();
            Ok(s - Matrix::identity(2, 2) * (shift + alpha))
        };
        let fm = fundamental_matrix((0.0, 2.0), coeff, 16).unwrap();
        for (s, u) in fm.samples().iter().enumerate() {
            let t = fm.sample_time(s);
            let bound = (-alpha * t).exp() * (1.0 + 1e-8);
            assert!(
                crate::linalg::spectral_norm(u) <= bound,
                "decay bound violated at t = {t}"
            );
        }
    }

    #[test]
    fn inverse_growth_bound() {
        let coeff = |t: f64| Ok(Matrix::from_row_slice(2, 2, &[-1.0, 0.5 * t.cos(), 0.3, -2.0]));
        let sup_norm = {
            let mut worst = 0.0f64;
            for k in 0..=100 {
                let t = k as f64 / 100.0;
                worst = worst.max(crate::linalg::spectral_norm(&coeff(t).unwrap()));
            }
            worst
        };
        let fm = fundamental_matrix((0.0, 1.0), coeff, 16).unwrap();
        for (s, u) in fm.samples().iter().enumerate() {
            let t = fm.sample_time(s);
            let inv = u.clone().try_inverse().unwrap();
            let bound = (t * sup_norm).exp() * (1.0 + 1e-8);
            assert!(
                crate::linalg::spectral_norm(&inv) <= bound,
                "inverse growth bound violated at t = {t}"
            );
        }
    }

    #[test]
    fn reference_matches_closed_form_on_linear_problem() {
        let spec = builtins::load("linear_decay").unwrap();
        let grid = Grid::uniform(0.0, 2.0, 0.5).unwrap();
        let traj = reference_solve(&spec, &grid, 8, 1e-10).unwrap();
        for (t, v) in traj.iter_samples() {
            assert!((v[0] - (-t).exp()).abs() < 1e-9, "at t = {t}");
            assert!(v[1].abs() < 1e-12);
        }
    }

    #[test]
    fn reference_reproduces_paper_exact_solution() {
        let spec = builtins::load("paper_example").unwrap();
        let grid = Grid::uniform(0.0, 6.0, 0.2).unwrap();
        let traj = reference_solve(&spec, &grid, 16, 1e-10).unwrap();
        let mut worst = 0.0f64;
        for (t, v) in traj.iter_samples() {
            let exact = vec2(t.sin(), t.cos());
            worst = worst.max((v - exact).norm());
        }
        assert!(worst <= 1e-8, "deviation {worst}");
    }

    #[test]
    fn reference_error_decreases_with_tolerance() {
        let spec = builtins::load("paper_example").unwrap();
        let grid = Grid::uniform(0.0, 3.0, 0.5).unwrap();
        let err_at = |tol: f64| {
            let traj = reference_solve(&spec, &grid, 4, tol).unwrap();
            let mut worst = 0.0f64;
            for (t, v) in traj.iter_samples() {
                worst = worst.max((v - vec2(t.sin(), t.cos())).norm());
            }
            worst
        };
        let (e4, e6, e8) = (err_at(1e-4), err_at(1e-6), err_at(1e-8));
        assert!(e6 <= e4, "1e-6 ({e6}) vs 1e-4 ({e4})");
        assert!(e8 <= e6, "1e-8 ({e8}) vs 1e-6 ({e6})");
    }

    #[test]
    fn reference_rejects_out_of_range_tolerance() {
        let spec = builtins::load("linear_decay").unwrap();
        let grid = Grid::uniform(0.0, 1.0, 0.5).unwrap();
        assert!(reference_solve(&spec, &grid, 4, 1e-2).is_err());
        assert!(reference_solve(&spec, &grid, 4, 1e-13).is_err());
    }

    #[test]
    fn stiffness_is_diagnosed() {
        // y' = y^2 blows up at t = 1; the reference integrator cannot pass
        // the singularity and reports either overflow or step underflow.
        let spec = ProblemSpec::parse(
            "dim = 1\nt0 = 0.0\nu0 = [1.0]\nphi = [\"0\"]\n\n[[term]]\npowers = [1]\nmatrix = [[\"1\"]]\n",
        )
        .unwrap();
        let grid = Grid::uniform(0.0, 2.0, 0.5).unwrap();
        match reference_solve(&spec, &grid, 4, 1e-8) {
            Err(Error::StepUnderflow { .. }) | Err(Error::Overflow { .. }) => {}
            other => panic!("expected failure diagnosis, got {other:?}"),
        }
    }
}
