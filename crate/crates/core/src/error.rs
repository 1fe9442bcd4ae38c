//! Error type shared by the exact layers of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("dimension must be positive: {0}")]
    NonPositiveDim(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid mode permutation {0:?}")]
    BadPermutation([usize; 3]),

    #[error("covector length {got} does not match third-mode dimension {want}")]
    LengthMismatch { got: usize, want: usize },

    #[error("unknown block index {0} (mode has {1} blocks)")]
    UnknownBlock(usize, usize),

    #[error("parameter out of range: {0}")]
    BadParameter(String),

    #[error("division by zero in the rational-function field")]
    DivisionByZero,

    #[error("slice scalar at index {0} is zero")]
    ZeroScalar(usize),

    #[error("kernel precondition violated: (A ⊗ B ⊗ C')S has a nonzero entry at ({0}, {1}, {2})")]
    KernelPrecondition(usize, usize, usize),

    #[error("partition error: {0}")]
    Partition(String),

    #[error("compression codimension {p} exceeds total slice width {total}")]
    CompressionTooLarge { p: usize, total: usize },

    #[error("first z-slice is singular")]
    SingularFirstSlice,

    #[error("normalized second z-slice is not diagonalizable over the rationals")]
    NotDiagonalizable,

    #[error("residual slice has no rational eigenvalue")]
    NoRationalEigenvalue,

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("matrix is not invertible")]
    Singular,

    #[error("parse error: {0}")]
    Parse(String),
}
