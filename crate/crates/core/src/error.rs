use thiserror::Error;

/// Errors raised by state construction, analysis and the command-line front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized: norm = {norm}")]
    NotNormalized { norm: f64 },

    #[error("qubit index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("operator is not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("invalid qubit permutation: {0}")]
    InvalidPermutation(String),

    #[error("qubit count {n} outside the supported range 1..={max}")]
    TooManyQubits { n: usize, max: usize },

    #[error("expected a {expected}-qubit state, found {found} qubits")]
    WrongQubitCount { expected: usize, found: usize },

    #[error("constraint violated: {0}")]
    ConstraintViolated(String),

    #[error("value {value} outside the range [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
