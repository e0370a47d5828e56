//! Solvers for Cauchy problems of the form
//!
//! ```text
//! u'(t) - N(t, u(t)) u(t) = phi(t),   u(t0) = u0,
//! ```
//!
//! where `N` is an m×m matrix polynomial in `u` with time-dependent
//! coefficients. The main solver ([`fd::solve`]) approximates the solution
//! as a partial sum `u ≈ u^(0) + u^(1) + ... + u^(p)` whose terms solve
//! linear problems with the nonlinear argument frozen at grid nodes; the
//! grid step `h` is the discretization parameter that controls geometric
//! convergence in the rank `p`. The [`adm`] module provides the grid-free
//! Adomian decomposition baseline for comparison, and [`hypotheses`]
//! estimates the dissipativity/boundedness constants that govern
//! convergence.
//!
//! Supporting machinery: [`grid`] and [`trajectory`] hold piecewise sampled
//! solutions, [`expr`] is a tiny expression language for coefficient
//! functions, [`problem`] defines and parses problem files, [`adomian`]
//! computes Adomian polynomials of polynomial operators by truncated
//! power-series arithmetic, and [`linode`] integrates linear interval
//! problems (fixed-step RK4) plus an adaptive Dormand-Prince 5(4)
//! reference oracle.

pub mod adm;
pub mod adomian;
pub mod builtins;
mod error;
pub mod expr;
pub mod fd;
pub mod grid;
pub mod hypotheses;
pub mod linalg;
pub mod linode;
pub mod problem;
pub mod trajectory;

pub use error::{Error, Result};
pub use grid::Grid;
pub use linalg::{Matrix, Vector};
pub use problem::{Majorant, ProblemSpec};
pub use trajectory::{NormMode, PiecewiseTrajectory, SeriesSolution};
