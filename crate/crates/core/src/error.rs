use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vector partition part is the zero vector")]
    ZeroPart,
    #[error("width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("target vector must be nonzero")]
    ZeroTarget,
    #[error("number of colors must be positive")]
    NoColors,
    #[error("edge ({0}, {1}) is not an edge of the graph")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge ({0}, {1})")]
    MultiEdge(usize, usize),
    #[error("vertex {0} has a nonpositive weight")]
    NonPositiveWeight(usize),
    #[error("{what} = {value} exceeds the configured cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: u128,
        cap: u128,
    },
    #[error("graph contains a cycle")]
    NotAForest,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("phi-image is not a monomial with coefficient 1: {0}")]
    NotMonomial(String),
    #[error("reconstruction left a negative exponent or coefficient: {0}")]
    Reconstruction(String),
    #[error("matrix is not square")]
    NonSquare,
}

pub type Result<T> = std::result::Result<T, Error>;
