use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    /// Malformed geometry: empty boxes, zero-size triangles, mixed dimensions.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The input is well formed but not a tiling of its region.
    #[error("invalid tiling: {0}")]
    InvalidTiling(String),

    /// A checked conclusion failed even though its hypotheses held.
    #[error("theorem check failed: {0}")]
    TheoremViolation(String),

    #[error("search aborted after {0} nodes")]
    NodeLimit(u64),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
