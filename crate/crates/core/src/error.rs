use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("enumeration too large: n = {n} exceeds the cap of {cap}")]
    EnumerationTooLarge { n: usize, cap: usize },

    #[error("invalid partition profile: {0}")]
    InvalidProfile(String),

    #[error("invalid set partition: {0}")]
    InvalidPartition(String),

    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("measure space has zero total mass")]
    ZeroMass,

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("configuration contains the point {0} twice")]
    DuplicatePoint(f64),

    #[error("internal consistency check failed: {what} ({left} vs {right})")]
    Consistency {
        what: String,
        left: String,
        right: String,
    },

    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("series did not converge within {terms} terms (last relative term {last_ratio:e})")]
    TruncationNotConverged { terms: usize, last_ratio: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
