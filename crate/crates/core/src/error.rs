use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyInput,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {dim} exceeds the cap of {cap} (set CORNER_MIXVOL_MAX_DIM to override)")]
    DimensionTooLarge { dim: usize, cap: usize },

    #[error("dimension must be positive")]
    ZeroDimension,

    #[error("negative scale factor {0}")]
    NegativeScale(String),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("polytope is not contained in the coordinate subspace {0}")]
    NotInSubspace(String),

    #[error("mixed-volume index j = {j} outside 0..={n}")]
    IndexJOutOfRange { j: usize, n: usize },

    #[error("expected {expected} bodies, got {found}")]
    WrongBodyCount { expected: usize, found: usize },

    #[error("negative coordinate in anti-blocking input: {0}")]
    NegativeCoordinate(String),

    #[error("body is not anti-blocking: {0}")]
    NotAntiBlocking(String),

    #[error("nonpositive parameter: {0}")]
    NonPositiveParameter(String),

    #[error("orthant pieces {sigma} and {tau} disagree on the projection onto {subspace}")]
    InconsistentPieces {
        sigma: String,
        tau: String,
        subspace: String,
    },

    #[error("union of the orthant pieces is not convex: {0}")]
    NonConvexUnion(String),

    #[error("body is not full-dimensional")]
    NotFullDimensional,

    #[error("two computation routes disagree for {what}: {left} vs {right}")]
    RouteDisagreement { what: String, left: String, right: String },

    #[error("random generation failed after {0} attempts")]
    GenerationFailed(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
