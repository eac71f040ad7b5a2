use thiserror::Error;

/// Errors raised by the library. Vertex and column indices carried by the
/// variants are 1-based, matching every external interface.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("column {col} sums to {sum}, expected 1")]
    ColumnSumViolation { col: usize, sum: f64 },

    #[error("negative entry at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("column {0} is entirely zero")]
    ZeroColumn(usize),

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector is not a probability vector: {0}")]
    NotProbabilityVector(String),

    #[error("dense eigenvalue iteration did not converge")]
    EigensolverFailure,

    #[error("elimination block is numerically singular (condition estimate {condition:e})")]
    SingularElimination { condition: f64 },

    #[error("vertex {0} is absorbing (a_kk = 1) and cannot be eliminated")]
    AbsorbingPivot(usize),

    #[error("no viable pivot among the {remaining} vertices left to eliminate")]
    NoViablePivot { remaining: usize },

    #[error("stationary system is singular; the stationary measure is not unique")]
    SingularSystem,

    #[error("iteration did not converge within {0} steps")]
    NoConvergence(usize),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("division by the zero rational function")]
    DivisionByZeroFunction,

    #[error("vertex set is not a structural set of the graph")]
    NotStructural,

    #[error("entry ({row}, {col}) has a pole at the requested lambda")]
    PoleAtLambda { row: usize, col: usize },

    #[error("det(R(lambda) - lambda I) vanishes identically")]
    DegenerateDeterminant,

    #[error("empty input")]
    EmptyInput,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
