//! Error type shared across the crate.

use thiserror::Error;

/// Alias used by every fallible operation in this crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A band generator produced a NaN or infinity during construction.
    #[error("non-finite value {value} at offset {offset}, row {row}")]
    NonFiniteEntry { offset: usize, row: usize, value: f64 },

    /// Entry access outside the matrix dimension.
    #[error("index ({k}, {l}) out of range for dimension {dim}")]
    IndexOutOfRange { k: usize, l: usize, dim: usize },

    /// Truncation target exceeds the current dimension.
    #[error("cannot truncate dimension {dim} to cutoff {cutoff} (needs dimension {})", cutoff + 1)]
    TruncateBeyondDim { cutoff: usize, dim: usize },

    /// Dense input to the eigensolver fails the symmetry tolerance.
    #[error("matrix not symmetric at ({k}, {l}): {upper} vs {lower}")]
    NotSymmetric { k: usize, l: usize, upper: f64, lower: f64 },

    /// QL iteration exhausted its sweep budget without isolating all eigenvalues.
    #[error("eigensolver failed to converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    /// Elimination denominator at or below the pivot floor.
    #[error("singular pivot eliminating state {index}: denominator {pivot:e}")]
    SingularPivot { index: usize, pivot: f64 },

    /// A multi-step reduction failed; `step` is the state being eliminated.
    #[error("reduction failed eliminating state {step}: {source}")]
    ReductionStep {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    /// Renormalization touched an entry outside the corner it is confined to.
    #[error("renormalization leaked outside the {m}x{m} corner at ({k}, {l}): delta {delta:e}")]
    LocalityViolation { m: usize, k: usize, l: usize, delta: f64 },

    /// Two matrices that must agree in shape do not.
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    /// Invalid parameter or configuration value.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Wraps an error with the index of the elimination step that produced it.
    pub(crate) fn at_step(self, step: usize) -> Error {
        Error::ReductionStep {
            step,
            source: Box::new(self),
        }
    }
}
