use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain where the quantity is defined.
    #[error("domain error in {parameter}: {reason}")]
    Domain {
        parameter: &'static str,
        reason: String,
    },
    /// Two arguments that must agree (grids, lengths, orderings) do not.
    #[error("contract violation: {0}")]
    Contract(String),
}

impl Error {
    pub(crate) fn domain(parameter: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            parameter,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
