use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation requested within the exclusion radius of a kernel pole.
    #[error("evaluation at {at} is {distance:e} from the pole at {pole}")]
    Pole {
        pole: Complex64,
        at: Complex64,
        distance: f64,
    },

    #[error("no convergence after {iterations} iterations (last residual {residual:e})")]
    Iteration { iterations: usize, residual: f64 },

    #[error("quadrature stopped at {value} with error estimate {estimate:e}")]
    Integration { value: Complex64, estimate: f64 },

    #[error("series not converged after {terms} terms (partial sum {partial_sum})")]
    Truncation { partial_sum: f64, terms: usize },

    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
