//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Matrix or system dimensions do not line up.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A matrix entry is NaN or infinite.
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    /// An iterative kernel (eigenvalue / singular value iteration) failed to
    /// converge. Never silently truncated.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// The Sylvester/Lyapunov operator is singular: no unique solution.
    #[error(
        "no unique solution: spectra of A and -B overlap \
         (smallest singular value of the vectorized operator: {smallest_singular_value:.3e})"
    )]
    NoUniqueSolution { smallest_singular_value: f64 },

    /// A linear solve hit a numerically singular matrix.
    #[error("singular matrix in {context}")]
    SingularMatrix { context: String },

    /// Invalid parameter value or violated type invariant.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A supplied commutation matrix does not certify the system it was
    /// paired with.
    #[error("inconsistent witness: {0}")]
    InconsistentWitness(String),

    /// A requested frequency sits (numerically) on an imaginary-axis pole.
    #[error("frequency {omega} is too close to an imaginary-axis pole")]
    PoleProximity { omega: f64 },

    /// The fast block F22 is singular; the slow reduction is undefined.
    #[error(
        "slow reduction undefined: F22 is singular \
         (smallest singular value {smallest_singular_value:.3e})"
    )]
    ReductionUndefined { smallest_singular_value: f64 },

    /// The fast coupling operator (1/2)Λ2†Λ2 + iM22 is singular; adiabatic
    /// elimination is undefined.
    #[error(
        "elimination undefined: (1/2)Λ2†Λ2 + iM22 is singular \
         (smallest singular value {smallest_singular_value:.3e})"
    )]
    EliminationUndefined { smallest_singular_value: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("file format error: {0}")]
    Format(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
