use thiserror::Error;

/// Errors raised by the library layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (defect {0:.3e})")]
    NotHermitian(f64),

    #[error("unsupported matrix dimension {0}")]
    InvalidDimension(usize),

    #[error("mode {mode} is not spanned by this {dim}x{dim} matrix")]
    ModeNotInMatrix { mode: char, dim: usize },

    #[error("modes must be distinct")]
    EqualModes,

    #[error("invalid subsystem selection: {0}")]
    InvalidSubsystem(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("state vector is not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("amplitude count {got} does not match family support size {expected}")]
    AmplitudeCount { got: usize, expected: usize },

    #[error("operation not supported for the GENERAL family")]
    UnsupportedFamily,

    #[error("closed forms require real nonnegative amplitudes")]
    UnsupportedRegime,

    #[error("search has no free parameter left")]
    OverConstrained,

    #[error("unknown figure id: {0}")]
    UnknownFigure(String),

    #[error("closed-form / numeric mismatch of {deviation:.3e} for spec {spec}")]
    ClosedFormMismatch { deviation: f64, spec: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o failure on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
