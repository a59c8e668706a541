use thiserror::Error;

/// Errors for malformed input and broken preconditions.
///
/// Failed checks on well-formed input are reported as data (see the report
/// types), not through this enum.
#[derive(Debug, Error)]
pub enum GyroError {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("element {index} out of range for carrier of size {size}")]
    OutOfRange { index: usize, size: usize },

    #[error("element {0} lies outside the declared carrier")]
    OutsideCarrier(String),

    #[error("{name} is not a gyrogroup: {reason}")]
    NotAGyrogroup { name: String, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("search space too large: {candidates} candidates exceeds guard {guard}")]
    SearchGuard { candidates: u128, guard: u128 },

    #[error("unknown builtin structure `{0}`")]
    UnknownBuiltin(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = GyroError> = std::result::Result<T, E>;
