use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building or evaluating a weak-measurement setup.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state is not normalized (norm² = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("invalid Schmidt form: {0}")]
    InvalidSchmidtForm(String),

    #[error("invalid setup: {0}")]
    InvalidSetup(String),

    #[error("post-selection is orthogonal to pre-selection (|<f|i>| = {overlap:e}); weak value undefined")]
    PostSelectionOrthogonal { overlap: f64 },

    #[error("post-selection never succeeds (probability {probability:e})")]
    PostSelectionImpossible { probability: f64 },

    #[error("probe is separable or nearly so (entropy {entropy:e}); entropy ratio undefined")]
    DegenerateProbe { entropy: f64 },

    #[error(
        "observable does not commute with Schmidt projector {index} (deviation {deviation:e})"
    )]
    ObservableNotSchmidtDiagonal { index: usize, deviation: f64 },

    #[error("first-order bracket {value} is not positive; coupling is outside the weak regime")]
    OutsideWeakRegime { value: f64 },

    #[error("invalid search configuration: {0}")]
    InvalidSearchConfig(String),

    #[error("config field `{field}`: {message}")]
    InvalidConfig { field: String, message: String },

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvalidConfig {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Process exit code for the command-line front end.
    ///
    /// 0 is success, 1 input error, 2 failed post-selection, 3 degenerate probe.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::PostSelectionOrthogonal { .. } | Error::PostSelectionImpossible { .. } => 2,
            Error::DegenerateProbe { .. } => 3,
            _ => 1,
        }
    }
}
