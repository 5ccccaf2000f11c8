//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("radicand {0} is not a squarefree integer >= 2")]
    NonSquarefreeRadicand(i64),
    #[error("radicands are multiplicatively dependent: {0}")]
    DependentRadicands(String),
    #[error("duplicate symbol name: {0}")]
    DuplicateSymbol(String),
    #[error("bad enclosure for symbol {0}: {1}")]
    BadEnclosure(String, String),
    #[error("syntax error at byte {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown token: {0}")]
    UnknownToken(String),
    #[error("division by zero scalar")]
    DivisionByZeroScalar,
    #[error("scalars belong to different fields")]
    FieldMismatch,
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported component: {0}")]
    UnsupportedComponent(String),
    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),
    #[error("cost guard exceeded: {0}")]
    CostGuardExceeded(String),
    #[error("usage error: {0}")]
    UsageError(String),
    #[error("invalid document: {0}")]
    InvalidDocument(String),
    #[error("invalid operator: {0}")]
    InvalidOperator(String),
}

pub type Result<T> = std::result::Result<T, Error>;
