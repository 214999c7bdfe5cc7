use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("variable x{index} out of range for {num_vars} variables")]
    VarOutOfRange { index: usize, num_vars: usize },
    #[error("variable count mismatch: {left} vs {right}")]
    VarsMismatch { left: usize, right: usize },
    #[error("polynomial contains the direction letter h")]
    ContainsDirection,
    #[error("polynomial contains h but no matrix was supplied for it")]
    MissingDirectionMatrix,
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("word {word} does not contain exactly two h letters")]
    NotQuadraticInDirection { word: String },
    #[error("matrix dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not symmetric (skew {skew:e})")]
    NonSymmetricMatrix { skew: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("right neighbours of {failing} word(s) are not harmonic, so the polynomial is not subharmonic")]
    NeighborNotHarmonic { failing: usize },
    #[error("harmonic basis lacks the independence property")]
    NoIndependenceProperty,
    #[error("decomposition infeasible: {0}")]
    Infeasible(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
