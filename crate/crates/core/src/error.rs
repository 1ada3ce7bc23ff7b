use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid potential: {0}")]
    InvalidPotential(String),
    #[error("points {0} and {1} coincide (squared distance {2:e})")]
    CoincidentPoints(usize, usize, f64),
    #[error("not near a critical point (gradient sup-norm {0:e})")]
    NotNearCritical(f64),
    #[error("newton polishing did not converge after {iterations} iterations (gradient sup-norm {gradient_norm:e})")]
    DidNotConverge { iterations: usize, gradient_norm: f64 },
    #[error("gram matrix is not positive semidefinite (eigenvalue {0:e})")]
    NotPsd(f64),
    #[error("gram matrix has rank {rank}, more than dimension {dim}")]
    RankTooHigh { rank: usize, dim: usize },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("shortening leaves no codewords")]
    EmptyShortening,
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("configuration does not span its ambient space")]
    SpanDeficient,
    #[error("permutation is not an automorphism of the configuration")]
    NotAnAutomorphism,
    #[error("need at least 3 energy levels, got {0}")]
    TooFewLevels(usize),
    #[error("shape mismatch: expected (n={0}, N={1}), got (n={2}, N={3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("point {index} is not on the unit sphere (norm {norm})")]
    NotOnSphere { index: usize, norm: f64 },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
