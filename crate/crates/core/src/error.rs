use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of a physical formula.
    #[error("domain error: {0}")]
    Domain(String),

    /// No base station is eligible to serve the receiver.
    #[error("no serving station")]
    NoServingStation,

    /// Signal, interference, and noise are all zero.
    #[error("SINR undefined: signal, interference and noise are all zero")]
    UndefinedSinr,

    /// A configuration value violates its invariant.
    #[error("invalid value for `{field}`: {reason}")]
    InvalidConfig { field: String, reason: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidConfig {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
