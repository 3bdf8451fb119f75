use thiserror::Error;

/// Errors raised by the distribution library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A distribution parameter violates its constraint. The message names it,
    /// e.g. "b must be nonzero".
    #[error("{0}")]
    InvalidParameter(String),
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no sign change over bracket [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    /// Non-convergence or a non-finite intermediate value.
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("unknown distribution `{0}`")]
    UnknownDistribution(String),
}

impl Error {
    /// True for errors caused by bad user input rather than a numeric breakdown.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::InvalidParameter(_) | Error::Domain(_) | Error::UnknownDistribution(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
