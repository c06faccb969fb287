use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("element is singular (a zero divisor) and has no inverse")]
    SingularElement,
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty matrix")]
    Empty,
    #[error("QR iteration did not converge after {iterations} sweeps")]
    ConvergenceFailure { iterations: usize },
    #[error("base value is not an eigenvalue of the selected component")]
    BaseNotEigenvalue,
    #[error("kappa is not a modified eigenvalue of T")]
    NotModifiedEigenvalue,
    #[error("lambda is not an eigenvalue of T")]
    NotEigenvalue,
    #[error("the two modified eigenvalues must differ")]
    IdenticalKappa,
    #[error("residual is undefined for the zero vector")]
    ZeroVector,
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("parse error at {context}: {message}")]
    Parse { context: String, message: String },
}

impl Error {
    pub(crate) fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
