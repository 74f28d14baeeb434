use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A quadrature did not meet its tolerance within the subdivision budget.
    #[error("quadrature did not converge: value {value}, error estimate {error_estimate} ({context})")]
    NonConvergence {
        value: f64,
        error_estimate: f64,
        context: String,
    },

    /// The request would exceed the supported problem size.
    #[error("resource limit: {0}")]
    Resource(String),

    /// A series was cut off before its terms became negligible.
    #[error("series truncation at k = {last_k}: partial sum {partial_sum} ({reason})")]
    Truncation {
        partial_sum: f64,
        last_k: usize,
        reason: String,
    },

    /// Two quantities that must agree by construction did not.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Machine-readable category name, used in CLI artifacts.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::NonConvergence { .. } => "non_convergence",
            Error::Resource(_) => "resource",
            Error::Truncation { .. } => "truncation",
            Error::Consistency(_) => "consistency",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
