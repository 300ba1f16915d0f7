//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A polytope description violates the input invariants (duplicate or
    /// nested facets, ids out of range, facet equal to the whole vertex set).
    #[error("invalid polytope description: {0}")]
    InvalidSpec(String),

    /// Structurally bad input to an operation (wrong regularity, not
    /// connected, inconsistent labels, facet is not a cube, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An enumeration resource guard tripped. Never a silent truncation.
    #[error("instance too large: {0}")]
    TooLarge(String),

    /// A reconstruction produced a face family that does not form a valid
    /// polytope lattice.
    #[error("input not recognized as polytopal: {0}")]
    NotPolytopal(String),

    /// Dual-graph reconstruction could not make progress.
    #[error("not recognized as capped: {0}")]
    NotCapped(String),

    /// A self-check failed after a rebuild; indicates a bug or an input
    /// outside the supported class.
    #[error("internal verification failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
