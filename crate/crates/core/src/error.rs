use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Matrix or vector shapes do not line up.
    #[error("dimension error: {0}")]
    Dimension(String),
    /// An argument lies outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A value failed a structural invariant (hermiticity, trace, positivity, norm).
    #[error("validation error: {0}")]
    Validation(String),
    /// A numerical routine failed to converge or produced non-finite output.
    #[error("numerical error: {0}")]
    Numerical(String),
    /// The operation is only implemented for specific dimensions.
    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;
