use num_complex::Complex64;
use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Evaluation at a pole.
    #[error("pole at {0}")]
    Pole(String),
    /// Argument lies on a branch cut the operation refuses to evaluate on.
    #[error("branch cut: {0}")]
    BranchCut(String),
    /// The requested method cannot evaluate this input.
    #[error("method unavailable: {0}")]
    MethodUnavailable(String),
    /// A table or exact computation was asked for more than it supports.
    #[error("capacity exceeded: requested {requested}, limit {limit}")]
    Capacity { requested: usize, limit: usize },
    /// The result does not fit in a double.
    #[error("overflow: {0}")]
    Overflow(String),
    /// A derived quantity is undefined (division by an exact zero, empty bracket, ...).
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// Iteration or quadrature stopped before the requested tolerance was met.
    #[error("no convergence after {evaluations} evaluations (best {best}, error estimate {error_estimate:e})")]
    NonConvergence {
        best: Complex64,
        error_estimate: f64,
        evaluations: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures to converge, as opposed to invalid input.
    pub fn is_non_convergence(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}
