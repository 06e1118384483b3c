use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("mixed scalar kinds: {0}")]
    MixedScalarKinds(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("complexity guard violated: {0}")]
    GuardViolated(String),
    #[error("zero polynomial has no roots to isolate")]
    ZeroPolynomial,
    #[error("duplicate roots: {0}")]
    DuplicateRoots(String),
    #[error("exponent arithmetic overflow")]
    ExponentOverflow,
    #[error("certificate invalid: {0}")]
    CertificateInvalid(String),
    #[error(
        "orthant measure mismatch: mass {mass}, label {label}: expected {expected}, got {got}"
    )]
    OrthantMismatch {
        mass: usize,
        label: String,
        expected: String,
        got: String,
    },
    #[error("bounds cell ({j},{k}) inconsistent: lower {lower} > upper {upper}")]
    CellInconsistent { j: u32, k: u32, lower: u32, upper: u32 },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
