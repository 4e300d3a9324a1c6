use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max |M - M^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    IndexOutOfRange { index: usize, n_qubits: usize },

    #[error("partial trace needs at least one kept qubit")]
    EmptyKeepSet,

    #[error("bipartition must be a nonempty proper subset of the {n_qubits} qubits")]
    InvalidBipartition { n_qubits: usize },

    #[error("non-finite entry in input")]
    NonFinite,

    #[error("amplitude vector has length {actual}, expected {expected}")]
    WrongLength { expected: usize, actual: usize },

    #[error("state vector has zero norm")]
    ZeroVector,

    #[error("state is not normalized (norm^2 = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("value {value} outside allowed range {range}")]
    OutOfRange { value: f64, range: &'static str },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("ket at position {position} has {found} qubits, expected {expected}")]
    MixedQubitCounts {
        position: usize,
        expected: usize,
        found: usize,
    },

    #[error("operation needs a {expected}-qubit state, got {found}")]
    WrongQubitCount { expected: usize, found: usize },

    #[error("operation needs at least {minimum} qubits, got {found}")]
    TooFewQubits { minimum: usize, found: usize },

    #[error("internal consistency check failed: {quantity} = {value:e}")]
    InternalConsistency { quantity: &'static str, value: f64 },

    #[error("monogamy inequality violated for focus {focus}: slack = {slack:e}")]
    MonogamyViolation { focus: char, slack: f64 },

    #[error("SLOCC classification ambiguous: exactly two single-qubit marginals are pure")]
    Ambiguous,
}

impl Error {
    /// True for errors caused by malformed textual input.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, Error::Syntax { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
