use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: {reason}")]
    InvalidArgument { op: &'static str, reason: String },

    /// A quantity that must be an integer came out fractional.
    #[error("{what} is not an integer: {value}")]
    NonIntegral { what: String, value: String },

    #[error("requested relative tolerance {requested:e} is below the achievable bound {achievable:e}")]
    Precision { requested: f64, achievable: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(op: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidArgument {
        op,
        reason: reason.into(),
    }
}
