use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree overflow: {0} + {1} exceeds 6")]
    DegreeOverflow(usize, usize),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("contraction of a 0-form")]
    ContractScalar,

    #[error("type label {label} does not apply to {kind}")]
    KindMismatch { label: String, kind: &'static str },

    #[error("element is not in {0}")]
    NotInSubspace(String),

    #[error("curvature symmetry violated: {0}")]
    SymmetryViolation(String),

    #[error("jet constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("block {block}: invariant {invariant} violated (residual {residual:.3e})")]
    BlockInvariant {
        block: String,
        invariant: String,
        residual: f64,
    },

    #[error("geometry setup failed: {0}")]
    Geometry(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("cache entry rejected: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
