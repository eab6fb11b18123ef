use thiserror::Error;

/// Errors produced by the quaternion linear-algebra and solver operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch in {operation}: expected {expected}, got {got}")]
    ShapeMismatch {
        operation: &'static str,
        expected: String,
        got: String,
    },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix of size {n} exceeds the enumeration cap {cap}")]
    SizeCapExceeded { n: usize, cap: usize },

    #[error("matrix is not Hermitian (entry ({row},{col}) disagrees with its mirror)")]
    NotHermitian { row: usize, col: usize },

    #[error("matrix is not normal (A*A != AA*)")]
    NotNormal,

    #[error("{operation}: matrix is singular")]
    Singular { operation: &'static str },

    #[error("division by a zero quaternion")]
    DivisionByZero,

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("polynomial has a root that is not representable in the exact scalar ring")]
    NonRationalRoot,

    #[error("polynomial has non-real roots (found {found} real roots of degree {degree})")]
    NonRealRoot { found: usize, degree: usize },

    #[error("value is not representable exactly (needs an irrational square root)")]
    NotRepresentable,

    #[error("eigenspace for eigenvalue #{which} has dimension {got}, expected {expected}")]
    EigenspaceDimension {
        which: usize,
        got: usize,
        expected: usize,
    },

    #[error("internal cross-check failed in {operation}: two formulations disagree")]
    InconsistentRepresentation { operation: &'static str },

    #[error("{operation} requires {requirement}")]
    Unsupported {
        operation: &'static str,
        requirement: &'static str,
    },

    #[error("input vectors are right-linearly dependent (vector #{index})")]
    DependentInput { index: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
