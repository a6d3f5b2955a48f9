use thiserror::Error;

use crate::exact::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mixed scalar fields: expected {expected}, found {found}")]
    MixedField { expected: Field, found: Field },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("operation is not supported over the field {0}")]
    UnsupportedField(Field),

    #[error("algebra `{algebra}` has no {capability}")]
    MissingCapability {
        algebra: String,
        capability: &'static str,
    },

    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("cannot parse scalar `{0}`")]
    ParseScalar(String),

    #[error("malformed algebra file at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn missing(algebra: &str, capability: &'static str) -> Self {
        Error::MissingCapability {
            algebra: algebra.to_string(),
            capability,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}
