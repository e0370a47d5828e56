//! Small dense linear-algebra helpers shared across the crate.
//!
//! Vectors and matrices are dynamically sized (`nalgebra` dense types);
//! problem dimensions here are tiny, so no care is taken to avoid
//! allocation.

use crate::{Error, Result};

pub type Vector = nalgebra::DVector<f64>;
pub type Matrix = nalgebra::DMatrix<f64>;

/// Spectral norm (largest singular value) via the power method on `AᵀA`.
///
/// Runs at most 50 iterations and stops early once the Rayleigh quotient
/// changes by less than 1e-12 relative.
pub fn spectral_norm(a: &Matrix) -> f64 {
    let n = a.ncols();
    if n == 0 || a.nrows() == 0 {
        return 0.0;
    }
    let ata = a.transpose() * a;
    // Deterministic start with a mild tilt so it is not orthogonal to the
    // dominant eigenvector of a permutation-symmetric AᵀA.
    let mut v = Vector::from_fn(n, |i, _| 1.0 + 0.5 * (i as f64 + 1.0) / n as f64);
    v /= v.norm();
    let mut lambda = 0.0f64;
    for _ in 0..50 {
        let w = &ata * &v;
        let norm = w.norm();
        if norm == 0.0 {
            return 0.0;
        }
        let next = v.dot(&w);
        v = w / norm;
        if (next - lambda).abs() <= 1e-12 * next.abs().max(1.0) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    lambda.max(0.0).sqrt()
}

/// Symmetric part `(A + Aᵀ)/2`.
pub fn symmetric_part(a: &Matrix) -> Matrix {
    (a + a.transpose()) * 0.5
}

/// Largest eigenvalue of a symmetric matrix.
pub fn symmetric_lambda_max(a: &Matrix) -> Result<f64> {
    let eig = a.clone().symmetric_eigen();
    eig.eigenvalues
        .iter()
        .copied()
        .fold(None, |acc: Option<f64>, x| {
            Some(acc.map_or(x, |m| m.max(x)))
        })
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::NumericalFailure("symmetric eigensolve produced no finite eigenvalue".into()))
}

/// True when every entry is finite.
pub fn all_finite(v: &Vector) -> bool {
    v.iter().all(|x| x.is_finite())
}
