use thiserror::Error;

use crate::label::Label;

/// Errors raised by the engine. Parse errors carry a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label {0}")]
    DuplicateLabel(Label),
    #[error("label indices are not contiguous: {0}")]
    NonContiguous(String),
    #[error("label {0} not found")]
    MissingLabel(Label),
    #[error("label {label} has the wrong polarity or color: expected {expected}")]
    WrongPort { label: Label, expected: &'static str },
    #[error("color mismatch: {0}")]
    ColorMismatch(String),
    #[error("composition would create a cycle (genus)")]
    Cycle,
    #[error("dangling port: {0}")]
    Dangling(String),
    #[error("not a bijection: {0}")]
    NotBijective(String),
    /// The contraction is zero: the two inputs are not open inputs on one boundary.
    #[error("contraction is zero: {0}")]
    ContractionZero(String),
    #[error("type has no output")]
    NoOutput,
    #[error("expected exactly one output")]
    NotSingleOutput,
    #[error("degree {0} term where degree 0 is required")]
    PositiveDegree(usize),
    #[error("cap {cap} is too small to contain any representative of {what}")]
    InsufficientCap { cap: usize, what: String },
    #[error("term not in the span at cap {0}")]
    OutsideSpan(usize),
    #[error("inconsistent class vector: {0}")]
    Inhomogeneous(String),
    #[error("descriptor composition: {0}")]
    KindMismatch(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
