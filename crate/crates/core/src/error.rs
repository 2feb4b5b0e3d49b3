use alloc::string::String;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("convergence failure in {what}: achieved error estimate {achieved:e}")]
    Convergence { what: &'static str, achieved: f64 },
    #[error("size error: {0}")]
    Size(String),
    #[error("singular coefficient: {0}")]
    SingularCoefficient(String),
    #[error("Q(τ) has a zero in (0, β]; kernel quantities are undefined")]
    FocalPoint,
    #[error("regularization routes disagree: {first:.15e} vs {second:.15e}")]
    Disagreement { first: f64, second: f64 },
    #[error("order cap exceeded: requested {requested}, cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("degenerate covariance: {0}")]
    DegenerateCovariance(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(msg: &str) -> Error {
    Error::Domain(String::from(msg))
}
