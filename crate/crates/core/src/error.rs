use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised anywhere in the library.
///
/// [`Error::category`] groups them into the coarse classes the command-line
/// front end maps onto exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit index {index} out of range for a {n_qubits}-qubit register")]
    InvalidQubit { index: usize, n_qubits: usize },
    #[error("gate acts twice on qubit {0}")]
    RepeatedQubit(usize),
    #[error("non-finite rotation angle {0}")]
    NonFiniteAngle(f64),
    #[error("cannot embed a zero vector: its norm is undefined")]
    ZeroNorm,
    #[error("{features} features do not fit into {n_qubits} qubits")]
    TooManyFeatures { features: usize, n_qubits: usize },
    #[error("qubit count mismatch: state has {state}, weights expect {weights}")]
    QubitMismatch { state: usize, weights: usize },
    #[error("expectation value {0} outside [-1, 1]")]
    ExpectationOutOfRange(f64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid architecture: {0}")]
    Architecture(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("missing column `{0}`")]
    MissingColumn(String),
    #[error("cannot parse `{value}` in column `{column}` (row {row})")]
    Parse {
        column: String,
        row: usize,
        value: String,
    },
    #[error("degenerate data: {0}")]
    DegenerateData(String),
    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),
    #[error("zero variance in paired differences; t statistic undefined")]
    ZeroVariance,
    #[error("singular system: {0}")]
    Singular(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Coarse error classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Malformed input, schema violation or invalid argument.
    Usage,
    /// Data that is well-formed but unusable (single class, too few rows).
    Data,
    /// Numerical breakdown (non-finite loss, singular systems).
    Numeric,
    /// Filesystem failure.
    Io,
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        use Error::*;
        match self {
            InvalidQubit { .. }
            | RepeatedQubit(_)
            | NonFiniteAngle(_)
            | TooManyFeatures { .. }
            | QubitMismatch { .. }
            | ExpectationOutOfRange(_)
            | DimensionMismatch { .. }
            | Architecture(_)
            | Config(_)
            | MissingColumn(_)
            | Parse { .. }
            | Csv(_)
            | Json(_) => ErrorCategory::Usage,
            ZeroNorm | DegenerateData(_) | InsufficientSamples(_) | ZeroVariance => {
                ErrorCategory::Data
            }
            NonFinite(_) | Singular(_) => ErrorCategory::Numeric,
            Io(_) => ErrorCategory::Io,
        }
    }
}
