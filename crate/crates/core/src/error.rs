use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: wrong subset sizes, out-of-range elements, bad files.
    #[error("invalid input: {0}")]
    Input(String),

    #[error("not a matroid: {0}")]
    NotAMatroid(String),

    #[error("set {{{0}}} is dependent")]
    Dependent(String),

    #[error("the resulting basis family is empty")]
    EmptyBasisFamily,

    #[error("valuations live on different matroids")]
    AmbientMismatch,

    #[error("not a valuation: {0}")]
    NotAValuation(String),

    #[error("not an exact cover: {0}")]
    NotExactCover(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("scale limit exceeded: {0}")]
    ScaleLimit(String),

    /// An internal consistency check failed. Never expected.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Errors caused by the caller's data, as opposed to internal failures.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}
