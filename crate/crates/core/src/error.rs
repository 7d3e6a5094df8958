use thiserror::Error;

/// Errors raised by the engine. Every operation on well-formed input is total;
/// these only signal malformed input or misuse of a typed surface.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("elements live over different deformation contexts")]
    ContextMismatch,

    #[error("expected form degree {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("element is not homogeneous in form degree")]
    MixedDegree,

    #[error("wrong number of arguments: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("matrix is not a projector")]
    NotProjector,

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid torus model: {0}")]
    InvalidModel(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
