use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not verified: contraction bound {bound:e} is not below 1")]
    NotVerified { bound: f64 },
    #[error("matrix of size {0} is too large for a determinant enclosure")]
    UnsupportedSize(usize),
    #[error("bad hex float literal {0:?}")]
    Parse(String),
}
