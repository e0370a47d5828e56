//! Adomian polynomials of polynomial operators.
//!
//! For an operator `F` and vectors `v0..vn`, the k-th Adomian polynomial
//! is the `tau^k` coefficient of `F(v0 + tau v1 + ... + tau^n vn)`. For
//! polynomial `F` these coefficients are exact finite combinations,
//! computed here by truncated power-series arithmetic in `tau`: monomials
//! are substituted component-wise and expanded with binary exponentiation,
//! and the matrix (or vector) coefficients enter linearly.
//!
//! The [`partition`] module re-derives the same polynomials from the
//! combinatorial partition-sum formula with exact multilinear derivatives.
//! It is factorially expensive and exists as an independent cross-check
//! for the series path; solver code never calls it.

use crate::linalg::{Matrix, Vector};
use crate::problem::{Majorant, PolyVectorField, ProblemSpec};
use crate::{Error, Result};

/// Truncated power series in `tau`; `coeffs[k]` multiplies `tau^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TauSeries<T> {
    coeffs: Vec<T>,
}

impl<T> TauSeries<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("series needs at least the constant term".into()));
        }
        Ok(TauSeries { coeffs })
    }

    /// Truncation order `n` (the series holds `n + 1` coefficients).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }
}

impl<T> TauSeries<T>
where
    T: Clone + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
{
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::InvalidArgument("series orders differ".into()));
        }
        Ok(TauSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn scale(&self, c: f64) -> Self {
        TauSeries {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c).collect(),
        }
    }
}

impl TauSeries<f64> {
    pub fn constant(c: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = c;
        TauSeries { coeffs }
    }

    /// Truncated product: `(s*r)_k = sum_{i+j=k} s_i r_j` for `k <= order`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::InvalidArgument("series orders differ".into()));
        }
        let n = self.order();
        let mut coeffs = vec![0.0; n + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(TauSeries { coeffs })
    }

    /// Truncated integer power by binary exponentiation.
    pub fn powi(&self, mut k: u32) -> Self {
        let n = self.order();
        let mut acc = TauSeries::constant(1.0, n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("matching orders");
            }
            base = base.mul(&base).expect("matching orders");
            k >>= 1;
        }
        acc
    }

    pub fn eval(&self, tau: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * tau + c)
    }
}

fn check_args(dim: usize, v: &[Vector]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::InvalidArgument("need at least v0".into()));
    }
    if v.iter().any(|x| x.len() != dim) {
        return Err(Error::InvalidArgument(format!("argument vectors must have length {dim}")));
    }
    Ok(())
}

/// Series of the monomial `u1^p1 ... um^pm` under `u_c -> sum tau^i v[i][c]`.
fn monomial_series(powers: &[u32], v: &[Vector]) -> TauSeries<f64> {
    let n = v.len() - 1;
    let mut mono = TauSeries::constant(1.0, n);
    for (c, &p) in powers.iter().enumerate() {
        if p > 0 {
            let comp = TauSeries::new(v.iter().map(|x| x[c]).collect()).expect("non-empty");
            mono = mono.mul(&comp.powi(p)).expect("matching orders");
        }
    }
    mono
}

/// Adomian polynomials `A_0..A_n` of the matrix operator `N(t, .)`.
///
/// `A_k` is the exact `tau^k` coefficient of `N(t, sum tau^i v_i)`; in
/// particular `A_0 = N(t, v_0)`.
pub fn adomian_matrix(spec: &ProblemSpec, t: f64, v: &[Vector]) -> Result<Vec<Matrix>> {
    check_args(spec.dim(), v)?;
    if !t.is_finite() {
        return Err(Error::InvalidArgument("non-finite time".into()));
    }
    let m = spec.dim();
    let n = v.len() - 1;
    let mut out = vec![Matrix::zeros(m, m); n + 1];
    for term in spec.terms() {
        let mono = monomial_series(&term.powers, v);
        let coeff = term.coeff_at(t, m);
        for (k, &c) in mono.coeffs().iter().enumerate() {
            if c != 0.0 {
                out[k] += &coeff * c;
            }
        }
    }
    Ok(out)
}

/// Adomian polynomials of the scalar majorant polynomial.
pub fn adomian_scalar(maj: &Majorant, x: &[f64]) -> Result<Vec<f64>> {
    if x.is_empty() {
        return Err(Error::InvalidArgument("need at least x0".into()));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("non-finite input".into()));
    }
    let n = x.len() - 1;
    let xs = TauSeries::new(x.to_vec())?;
    let mut out = vec![0.0; n + 1];
    let mut pow = TauSeries::constant(1.0, n);
    for (d, &b) in maj.coeffs().iter().enumerate() {
        if d > 0 {
            pow = pow.mul(&xs)?;
        }
        if b != 0.0 {
            for (k, &c) in pow.coeffs().iter().enumerate() {
                out[k] += b * c;
            }
        }
    }
    Ok(out)
}

/// Adomian polynomials of a polynomial vector field.
pub fn adomian_vector_field(field: &PolyVectorField, t: f64, v: &[Vector]) -> Result<Vec<Vector>> {
    check_args(field.dim_in(), v)?;
    let n = v.len() - 1;
    let mut out = vec![Vector::zeros(field.dim_out()); n + 1];
    for (powers, coeff) in field.terms() {
        let mono = monomial_series(powers, v);
        let g = Vector::from_fn(field.dim_out(), |r, _| coeff[r].eval(t));
        for (k, &c) in mono.coeffs().iter().enumerate() {
            if c != 0.0 {
                out[k] += &g * c;
            }
        }
    }
    Ok(out)
}

/// Partition-sum reference implementation (test oracle).
pub mod partition {
    use super::*;

    const MAX_ORDER: usize = 8;

    /// All `(p_1..p_n)` with `sum k*p_k = n`.
    fn partitions(n: usize) -> Vec<Vec<usize>> {
        fn rec(k: usize, n: usize, remaining: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k > n {
                if remaining == 0 {
                    out.push(current.clone());
                }
                return;
            }
            for count in 0..=remaining / k {
                current.push(count);
                rec(k + 1, n, remaining - k * count, current, out);
                current.pop();
            }
        }
        let mut out = Vec::new();
        let mut current = Vec::new();
        rec(1, n, n, &mut current, &mut out);
        out
    }

    fn factorial(k: usize) -> f64 {
        (1..=k).map(|i| i as f64).product()
    }

    fn falling(base: u32, count: usize) -> f64 {
        (0..count).map(|i| (base as f64) - i as f64).product()
    }

    /// P-th derivative of the monomial `u^powers` as a symmetric multilinear
    /// form applied to the vector list `ws`, evaluated at `u0`. Enumerates
    /// all component assignments directly.
    fn monomial_multilinear(powers: &[u32], u0: &Vector, ws: &[&Vector]) -> f64 {
        let m = powers.len();
        let p = ws.len();
        if p == 0 {
            return powers
                .iter()
                .zip(u0.iter())
                .map(|(&q, &x)| x.powi(q as i32))
                .product();
        }
        let mut total = 0.0;
        let mut assign = vec![0usize; p];
        loop {
            // multi-index k_c = number of j with assign[j] = c
            let mut counts = vec![0usize; m];
            for &a in &assign {
                counts[a] += 1;
            }
            let mut deriv = 1.0;
            for c in 0..m {
                if counts[c] > powers[c] as usize {
                    deriv = 0.0;
                    break;
                }
                deriv *= falling(powers[c], counts[c]) * u0[c].powi(powers[c] as i32 - counts[c] as i32);
            }
            if deriv != 0.0 {
                let product: f64 = assign.iter().enumerate().map(|(j, &c)| ws[j][c]).product();
                total += deriv * product;
            }
            // odometer over [0, m)^p
            let mut pos = 0;
            loop {
                if pos == p {
                    return total;
                }
                assign[pos] += 1;
                if assign[pos] < m {
                    break;
                }
                assign[pos] = 0;
                pos += 1;
            }
        }
    }

    /// `A_0..A_n` of the matrix operator via the partition-sum formula.
    pub fn adomian_matrix(spec: &ProblemSpec, t: f64, v: &[Vector]) -> Result<Vec<Matrix>> {
        check_args(spec.dim(), v)?;
        let n = v.len() - 1;
        if n > MAX_ORDER {
            return Err(Error::Unsupported(format!(
                "partition oracle enumerates up to order {MAX_ORDER}, requested {n}"
            )));
        }
        let m = spec.dim();
        let mut out = vec![Matrix::zeros(m, m); n + 1];
        out[0] = spec.eval_n(t, &v[0])?;
        for order in 1..=n {
            let mut acc = Matrix::zeros(m, m);
            for part in partitions(order) {
                let factor: f64 = 1.0 / part.iter().map(|&pk| factorial(pk)).product::<f64>();
                let ws: Vec<&Vector> = part
                    .iter()
                    .enumerate()
                    .flat_map(|(k, &pk)| std::iter::repeat(&v[k + 1]).take(pk))
                    .collect();
                for term in spec.terms() {
                    let scalar = monomial_multilinear(&term.powers, &v[0], &ws);
                    if scalar != 0.0 {
                        acc += term.coeff_at(t, m) * (factor * scalar);
                    }
                }
            }
            out[order] = acc;
        }
        Ok(out)
    }

    /// `A_0..A_n` of the scalar majorant via the partition-sum formula.
    pub fn adomian_scalar(maj: &Majorant, x: &[f64]) -> Result<Vec<f64>> {
        if x.is_empty() {
            return Err(Error::InvalidArgument("need at least x0".into()));
        }
        let n = x.len() - 1;
        if n > MAX_ORDER {
            return Err(Error::Unsupported(format!(
                "partition oracle enumerates up to order {MAX_ORDER}, requested {n}"
            )));
        }
        let mut out = vec![0.0; n + 1];
        out[0] = maj.eval(x[0]);
        for order in 1..=n {
            let mut acc = 0.0;
            for part in partitions(order) {
                let p: usize = part.iter().sum();
                let factor: f64 = 1.0 / part.iter().map(|&pk| factorial(pk)).product::<f64>();
                // P-th derivative of the majorant at x0
                let deriv: f64 = maj
                    .coeffs()
                    .iter()
                    .enumerate()
                    .skip(p)
                    .map(|(d, &b)| b * falling(d as u32, p) * x[0].powi((d - p) as i32))
                    .sum();
                let product: f64 = part
                    .iter()
                    .enumerate()
                    .map(|(k, &pk)| x[k + 1].powi(pk as i32))
                    .product();
                acc += factor * deriv * product;
            }
            out[order] = acc;
        }
        Ok(out)
    }
}
