use std::fmt;

/// Errors surfaced by solver operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A precondition on an argument was violated.
    InvalidArgument(String),
    /// A time outside the trajectory domain was requested.
    OutOfRange { t: f64, lo: f64, hi: f64 },
    /// The integrator state became non-finite at time `t`.
    Overflow { t: f64, context: String },
    /// The adaptive integrator's step size underflowed (stiffness).
    StepUnderflow { t: f64 },
    /// A convergence hypothesis does not hold for the given data.
    HypothesisViolated(String),
    /// An iterative numeric routine failed to produce a usable result.
    NumericalFailure(String),
    /// The operation is outside the supported parameter range.
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::OutOfRange { t, lo, hi } => {
                write!(f, "time {t} outside trajectory domain [{lo}, {hi}]")
            }
            Error::Overflow { t, context } => {
                write!(f, "non-finite state at t = {t} while {context}")
            }
            Error::StepUnderflow { t } => {
                write!(f, "step size underflow at t = {t}; problem appears stiff")
            }
            Error::HypothesisViolated(msg) => write!(f, "hypothesis violated: {msg}"),
            Error::NumericalFailure(msg) => write!(f, "numerical failure: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
