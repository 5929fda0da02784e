use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index k = {k} out of range for n = {n} (need {min} <= k <= {max})")]
    KOutOfRange { n: usize, k: usize, min: usize, max: usize },

    #[error("matrix dimension {n} outside the supported range {min}..={max}")]
    DimensionOutOfRange { n: usize, min: usize, max: usize },

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("polynomial is not symmetric: swapping x{i} and x{j} changes it", i = .0 + 1, j = .0 + 2)]
    NotSymmetric(usize),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetricMatrix { i: usize, j: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("variable sets differ")]
    VariableMismatch,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("integer coefficient overflow in polynomial kernel")]
    Overflow,

    #[error("identity check failed: {0}")]
    IdentityFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
