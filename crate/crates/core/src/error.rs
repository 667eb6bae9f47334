use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid linearization: {0}")]
    InvalidLinearization(String),

    #[error("invalid initial Hamiltonian h-values: {0}")]
    InvalidH(String),

    #[error("missing gap vector lambda")]
    MissingLambda,

    #[error("operator is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("eigensolver failed to converge{}", at_s.map(|s| format!(" at s={s}")).unwrap_or_default())]
    NoConvergence { at_s: Option<f64> },

    #[error("degenerate gap: gMin = {0} must be positive")]
    DegenerateGap(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("unresolvable degeneracy: solutions {0} and {1} are equivalent")]
    Unresolvable(usize, usize),

    #[error("degeneracy resolution failed after {} candidates", tried.len())]
    ResolutionFailed { tried: Vec<Vec<f64>> },

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
