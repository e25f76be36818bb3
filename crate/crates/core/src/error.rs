use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A factor in a denominator (or a negative-index Pochhammer) vanished.
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("length error: {0}")]
    Length(String),
    /// Parameters violate an invertibility or admissibility condition.
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("singular matrix: {0}")]
    SingularMatrix(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by a pole of some formula rather than bad input shape.
    pub fn is_arithmetic_pole(&self) -> bool {
        matches!(
            self,
            Error::DivisionByZero(_) | Error::Parameter(_) | Error::SingularMatrix(_)
        )
    }
}
