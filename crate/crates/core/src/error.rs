use thiserror::Error;

use crate::label::Label;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("empty input")]
    EmptyInput,
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("empty triple at byte {position}")]
    EmptyTriple { position: usize },
    #[error("malformed sign at byte {position}: {text:?}")]
    MalformedSign { position: usize, text: String },
    #[error("invalid label {0:?}")]
    InvalidLabel(String),
    #[error("label {label} occurs {count} times, expected {expected}")]
    Arity { label: Label, count: usize, expected: usize },
    #[error("unknown vertex class {0}")]
    UnknownVertex(usize),
    #[error("triangle {0} is not of collar shape (strand, u, v)")]
    NotCollarShape(usize),
    #[error("path is not composable at position {0}")]
    NonComposable(usize),
    #[error("unknown label {0}")]
    UnknownLabel(Label),
    #[error("complex is disconnected")]
    Disconnected,
    #[error("inconsistent constraints: {0}")]
    InconsistentConstraints(String),
    #[error("json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CobordismError {
    #[error("{0} is not a label of the collar")]
    UnknownCollarLabel(Label),
    #[error("cannot parse generator {0:?}")]
    BadGenerator(String),
    #[error("empty word")]
    EmptyWord,
    #[error("bodies share label {0}; relabel one of them first")]
    SharedLabel(Label),
    #[error("merge conflict: {0}")]
    MergeConflict(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RGraphError {
    #[error("subword range {start}..={end} is outside a word of length {len}")]
    BadRange { start: usize, end: usize, len: usize },
    #[error("embedding failed: {0}")]
    EmbeddingFailed(String),
    #[error(transparent)]
    Cobordism(#[from] CobordismError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("n = {n} exceeds the enumeration bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
}
