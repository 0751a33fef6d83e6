use thiserror::Error;

/// Errors surfaced by the exact-arithmetic and dynamics layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("all entries are zero")]
    AllZero,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("denominator vanishes at t = {0}")]
    PoleAtParameter(String),
    #[error("coordinates do not define a projective point (all zero)")]
    NotAPoint,
    #[error("dimension mismatch: expected k = {expected}, got k = {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("form {index} is not homogeneous of degree {expected}")]
    InhomogeneousInput { index: usize, expected: usize },
    #[error("map degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("the coordinate forms share a projective zero: not a morphism")]
    NotAMorphism,
    #[error("operation requires a degree-2 self-map of the projective line")]
    UnsupportedShape,
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn syntax(line: usize, col: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            col,
            message: message.into(),
        }
    }

    /// Exit-code class: 1 for bad input, 2 for internal faults.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
