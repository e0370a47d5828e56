//! Estimators for the constants that govern convergence of the
//! frozen-coefficient method: the dissipativity margin `alpha` of the
//! Jacobian of `u -> N(t,u)u`, the forcing bound `kappa`, the base-term
//! bound `mu`, the coefficient suprema `gamma1`/`gamma2` over the ball of
//! radius `mu`, and the admissible step `h_bar` derived from them.
//!
//! Everything here is sampled evidence, not certification: suprema are
//! taken over seeded random (or uniform) sample sets and reported together
//! with the seed and sample count.

use crate::fd::dn_matrix;
use crate::linalg::{spectral_norm, symmetric_lambda_max, symmetric_part, Matrix, Vector};
use crate::problem::ProblemSpec;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Axis-aligned box in state space.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl Region {
    /// The cube `[-r, r]^dim`.
    pub fn centered_cube(dim: usize, r: f64) -> Self {
        Region {
            lo: vec![-r; dim],
            hi: vec![r; dim],
        }
    }

    fn validate(&self, dim: usize) -> Result<()> {
        if self.lo.len() != dim || self.hi.len() != dim {
            return Err(Error::InvalidArgument("region dimension mismatch".into()));
        }
        if self.lo.iter().zip(&self.hi).any(|(a, b)| !(a < b)) {
            return Err(Error::InvalidArgument("region must have positive extent".into()));
        }
        Ok(())
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Vector {
        Vector::from_fn(self.lo.len(), |i, _| rng.gen_range(self.lo[i]..self.hi[i]))
    }
}

/// Jacobian of `u -> N(t,u)u`: `N(t,u)` plus the matrix of partial
/// derivatives applied to `u` columnwise.
pub fn jacobian(spec: &ProblemSpec, t: f64, u: &Vector) -> Result<Matrix> {
    Ok(spec.eval_n(t, u)? + dn_matrix(spec, t, u, u)?)
}

/// Result of sampling the dissipativity margin.
#[derive(Debug, Clone)]
pub struct AlphaEstimate {
    /// `-max` over samples of the largest eigenvalue of the symmetrized
    /// Jacobian; positive means every sampled point was dissipative.
    pub alpha: f64,
    /// Sample attaining the maximum eigenvalue.
    pub argmax_t: f64,
    pub argmax_u: Vector,
}

/// Samples `(t, u)` over `t_range x region` and maximizes the largest
/// eigenvalue of `(J + J^T)/2`.
pub fn estimate_alpha(
    spec: &ProblemSpec,
    region: &Region,
    t_range: (f64, f64),
    samples: usize,
    seed: u64,
) -> Result<AlphaEstimate> {
    if samples < 100 {
        return Err(Error::InvalidArgument("need at least 100 samples".into()));
    }
    region.validate(spec.dim())?;
    let (a, b) = t_range;
    if !(a.is_finite() && b.is_finite()) || b <= a {
        return Err(Error::InvalidArgument(format!("empty time range [{a}, {b}]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::NEG_INFINITY;
    let mut argmax_t = a;
    let mut argmax_u = Vector::zeros(spec.dim());
    for _ in 0..samples {
        let t = rng.gen_range(a..b);
        let u = region.sample(&mut rng);
        let lambda = symmetric_lambda_max(&symmetric_part(&jacobian(spec, t, &u)?))?;
        if lambda > best {
            best = lambda;
            argmax_t = t;
            argmax_u = u;
        }
    }
    Ok(AlphaEstimate {
        alpha: -best,
        argmax_t,
        argmax_u,
    })
}

/// Sampled sup of `|phi(t)|` over `t_range` (uniform samples including
/// both endpoints).
pub fn estimate_kappa(spec: &ProblemSpec, t_range: (f64, f64), samples: usize) -> Result<f64> {
    let (a, b) = t_range;
    if !(a.is_finite() && b.is_finite()) || b <= a {
        return Err(Error::InvalidArgument(format!("empty time range [{a}, {b}]")));
    }
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least 2 samples".into()));
    }
    let mut worst = 0.0f64;
    for k in 0..samples {
        let t = a + (b - a) * k as f64 / (samples - 1) as f64;
        worst = worst.max(spec.eval_phi(t).norm());
    }
    Ok(worst)
}

/// Base-term bound `mu` and its interior companion `mu1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuBounds {
    /// `max(|u0|, kappa/alpha) + epsilon1`
    pub mu: f64,
    /// `max(|u0|, kappa/alpha) + epsilon1/2`
    pub mu1: f64,
}

pub fn compute_mu(u0_norm: f64, kappa: f64, alpha: f64, epsilon1: f64) -> Result<MuBounds> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::HypothesisViolated(format!(
            "dissipativity margin must be positive, got {alpha}"
        )));
    }
    if !(epsilon1.is_finite() && epsilon1 > 0.0) {
        return Err(Error::InvalidArgument("epsilon1 must be positive".into()));
    }
    let core = u0_norm.max(kappa / alpha);
    Ok(MuBounds {
        mu: core + epsilon1,
        mu1: core + epsilon1 / 2.0,
    })
}

/// Admissible-step estimate together with the coefficient suprema that
/// produced it.
#[derive(Debug, Clone, Copy)]
pub struct StepBound {
    pub h_bar: f64,
    /// Sampled sup of `|N(t,u)|` over the ball of radius `mu`.
    pub gamma1: f64,
    /// Sampled sup of the derivative-column matrix over the ball.
    pub gamma2: f64,
}

/// The closed-form admissible step `(alpha mu1 - kappa) / (gamma2 (gamma1 mu + kappa))`;
/// infinite when `gamma2 = 0` (freezing is exact for u-independent `N`).
pub fn step_bound_formula(alpha: f64, mu1: f64, kappa: f64, gamma1: f64, mu: f64, gamma2: f64) -> Result<f64> {
    let margin = alpha * mu1 - kappa;
    if margin <= 0.0 {
        return Err(Error::HypothesisViolated(format!(
            "alpha*mu1 - kappa = {margin} must be positive"
        )));
    }
    if gamma2 == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(margin / (gamma2 * (gamma1 * mu + kappa)))
}

/// Samples `gamma1` and `gamma2` over the ball `|u| <= mu` and applies
/// [`step_bound_formula`]. The derivative supremum uses 128 fixed unit
/// directions scaled to the ball radius (the column matrix is linear in
/// the applied vector, so the sphere suffices).
pub fn estimate_step_bound(
    spec: &ProblemSpec,
    mu: f64,
    mu1: f64,
    kappa: f64,
    alpha: f64,
    t_range: (f64, f64),
    samples: usize,
    seed: u64,
) -> Result<StepBound> {
    if alpha * mu1 <= kappa {
        return Err(Error::HypothesisViolated(format!(
            "alpha*mu1 = {} does not exceed kappa = {kappa}",
            alpha * mu1
        )));
    }
    let (a, b) = t_range;
    if !(a.is_finite() && b.is_finite()) || b <= a {
        return Err(Error::InvalidArgument(format!("empty time range [{a}, {b}]")));
    }
    let m = spec.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5b68_1df2);
    let mut ball_point = |rng: &mut ChaCha8Rng| loop {
        let u = Vector::from_fn(m, |_, _| rng.gen_range(-1.0..1.0));
        if u.norm() <= 1.0 {
            return u;
        }
    };
    let mut gamma1 = 0.0f64;
    for _ in 0..samples.max(64) {
        let t = rng.gen_range(a..b);
        let u = ball_point(&mut rng) * mu;
        gamma1 = gamma1.max(spectral_norm(&spec.eval_n(t, &u)?));
    }
    let directions: Vec<Vector> = (0..128)
        .map(|_| {
            let mut v = ball_point(&mut rng);
            while v.norm() < 1e-3 {
                v = ball_point(&mut rng);
            }
            let n = v.norm();
            v / n
        })
        .collect();
    let mut gamma2 = 0.0f64;
    for _ in 0..(samples / 32).max(64) {
        let t = rng.gen_range(a..b);
        let u = ball_point(&mut rng) * mu;
        for dir in &directions {
            let applied = dir * mu;
            gamma2 = gamma2.max(spectral_norm(&dn_matrix(spec, t, &u, &applied)?));
        }
    }
    let h_bar = step_bound_formula(alpha, mu1, kappa, gamma1, mu, gamma2)?;
    Ok(StepBound { h_bar, gamma1, gamma2 })
}

/// Aggregated report on the three convergence hypotheses.
#[derive(Debug, Clone)]
pub struct HypothesisReport {
    pub alpha: f64,
    pub alpha_argmax_t: f64,
    pub alpha_argmax_u: Vector,
    pub kappa: f64,
    /// True when extending the time range by its own length grows the
    /// sampled `kappa` by more than 10% (the bound is range-dependent).
    pub kappa_range_sensitive: bool,
    pub majorant: Vec<f64>,
    pub epsilon1: f64,
    pub mu: f64,
    pub mu1: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub h_bar: f64,
    /// Polynomial `N` with a finite majorant (structural, always checked).
    pub condition1_ok: bool,
    /// Sampled forcing bound is finite.
    pub condition2_ok: bool,
    /// Sampled dissipativity margin is positive.
    pub condition3_ok: bool,
    pub t_range: (f64, f64),
    pub region: Region,
    pub samples: usize,
    pub seed: u64,
}

impl HypothesisReport {
    /// Flat `key = value` text block.
    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        let mut s = String::new();
        let _ = writeln!(s, "alpha = {}", self.alpha);
        let _ = writeln!(s, "alpha_argmax_t = {}", self.alpha_argmax_t);
        let u: Vec<String> = self.alpha_argmax_u.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "alpha_argmax_u = [{}]", u.join(", "));
        let _ = writeln!(s, "kappa = {}", self.kappa);
        let _ = writeln!(s, "kappa_range_sensitive = {}", self.kappa_range_sensitive);
        let b: Vec<String> = self.majorant.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "majorant = [{}]", b.join(", "));
        let _ = writeln!(s, "epsilon1 = {}", self.epsilon1);
        let _ = writeln!(s, "mu = {}", self.mu);
        let _ = writeln!(s, "mu1 = {}", self.mu1);
        let _ = writeln!(s, "gamma1 = {}", self.gamma1);
        let _ = writeln!(s, "gamma2 = {}", self.gamma2);
        let _ = writeln!(s, "h_bar = {}", self.h_bar);
        let _ = writeln!(s, "condition1_ok = {}", self.condition1_ok);
        let _ = writeln!(s, "condition2_ok = {}", self.condition2_ok);
        let _ = writeln!(s, "condition3_ok = {}", self.condition3_ok);
        let _ = writeln!(s, "t_range = [{}, {}]", self.t_range.0, self.t_range.1);
        let lo: Vec<String> = self.region.lo.iter().map(|x| x.to_string()).collect();
        let hi: Vec<String> = self.region.hi.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "region_lo = [{}]", lo.join(", "));
        let _ = writeln!(s, "region_hi = [{}]", hi.join(", "));
        let _ = writeln!(s, "samples = {}", self.samples);
        let _ = writeln!(s, "seed = {}", self.seed);
        s
    }
}

/// Runs every estimator and fills the report. When the sampled margin is
/// not positive, the `mu`-dependent quantities are reported as NaN.
pub fn report(
    spec: &ProblemSpec,
    t_range: (f64, f64),
    region: &Region,
    epsilon1: f64,
    samples: usize,
    seed: u64,
) -> Result<HypothesisReport> {
    let majorant = spec.majorant(t_range, 1024)?.coeffs().to_vec();
    let kappa_samples = samples.clamp(1024, 65_536);
    let kappa = estimate_kappa(spec, t_range, kappa_samples)?;
    let extended = estimate_kappa(spec, (t_range.0, t_range.1 + (t_range.1 - t_range.0)), kappa_samples)?;
    let kappa_range_sensitive = extended > 1.1 * kappa;
    let alpha_est = estimate_alpha(spec, region, t_range, samples.max(100), seed)?;
    let condition3_ok = alpha_est.alpha > 0.0;
    let (mu, mu1, gamma1, gamma2, h_bar) = if condition3_ok {
        let bounds = compute_mu(spec.u0().norm(), kappa, alpha_est.alpha, epsilon1)?;
        let step = estimate_step_bound(spec, bounds.mu, bounds.mu1, kappa, alpha_est.alpha, t_range, samples, seed)?;
        (bounds.mu, bounds.mu1, step.gamma1, step.gamma2, step.h_bar)
    } else {
        (f64::NAN, f64::NAN, f64::NAN, f64::NAN, f64::NAN)
    };
    Ok(HypothesisReport {
        alpha: alpha_est.alpha,
        alpha_argmax_t: alpha_est.argmax_t,
        alpha_argmax_u: alpha_est.argmax_u,
        kappa,
        kappa_range_sensitive,
        majorant,
        epsilon1,
        mu,
        mu1,
        gamma1,
        gamma2,
        h_bar,
        condition1_ok: true,
        condition2_ok: kappa.is_finite(),
        condition3_ok,
        t_range,
        region: region.clone(),
        samples,
        seed,
    })
}
