use crate::tensor::Matrix;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("mode index {mode} out of range for a tensor of order {order}")]
    ModeOutOfRange { mode: usize, order: usize },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("matrix is not positive definite")]
    NotPd,

    #[error("{what} did not converge after {iterations} iterations")]
    NotConverged {
        what: &'static str,
        iterations: usize,
        last: Box<Matrix>,
    },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("invalid sample split: {0}")]
    Split(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("no auxiliary domains supplied")]
    NoDomains,

    #[error("malformed tensor file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
