use thiserror::Error;

#[derive(Debug, Error)]
pub enum EpError {
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("group mismatch: {0}")]
    SpecMismatch(String),
    #[error("invalid group element: {0}")]
    InvalidElement(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("unknown arc {0}")]
    UnknownArc(usize),
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("vertex set is not clean")]
    NotClean,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("size guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("unimplemented branch: {0}")]
    Unimplemented(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, EpError>;
