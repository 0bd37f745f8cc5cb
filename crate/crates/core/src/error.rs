use num_complex::Complex64;
use thiserror::Error;

/// Every failure mode of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} did not converge after {iterations} iterations")]
    ConvergenceFailure { what: &'static str, iterations: usize },
    #[error("derivative of order {order} is unavailable for this scalar function")]
    DerivativeUnavailable { order: usize },
    #[error("scalar function is singular at eigenvalue {0}")]
    SingularFunction(Complex64),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("could not generate a well-conditioned family: {0}")]
    GenerationFailure(String),
    #[error("pole: eigenvalue {0} is at or next to a nonpositive integer")]
    Pole(Complex64),
    #[error("matrices do not commute (relative commutator {0:.3e})")]
    CommutativityViolation(f64),
    #[error("series diverges: {0}")]
    DivergentSeries(String),
    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),
    #[error("non-integrable or non-finite integrand near t = {0}")]
    SingularEndpoint(f64),
    #[error("shape error: {0}")]
    ShapeError(String),
    #[error("matrix is numerically singular")]
    SingularMatrix,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
