use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("index {index} out of range 1..={dim}")]
    Index { index: usize, dim: usize },

    /// Carries `|Im z|`.
    #[error("value is not real: |im| = {0:e}")]
    NotReal(f64),

    #[error("overflow in {0}")]
    Overflow(&'static str),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("degenerate incidence: {0}")]
    DegenerateIncidence(String),
}

impl Error {
    pub(crate) fn dim_mismatch(what: &str, left: usize, right: usize) -> Self {
        Error::Dimension(format!("{what}: {left} vs {right}"))
    }
}
