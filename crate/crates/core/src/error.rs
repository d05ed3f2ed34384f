use std::fmt;

use thiserror::Error;

/// Byte range plus the 1-based line/column of its start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid signature: {0}")]
    Signature(String),

    #[error("invalid structure: {0}")]
    Structure(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("arity mismatch for `{symbol}`: expected {expected}, found {found}")]
    Arity {
        symbol: String,
        expected: usize,
        found: usize,
    },

    #[error("syntax error at {span}: {message}")]
    Syntax { span: Span, message: String },

    #[error("shape violation at {span}: {message}")]
    Shape { span: Span, message: String },

    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("map is not a homomorphism")]
    NotAHomomorphism,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0}")]
    Semantic(String),
}

impl Error {
    pub fn is_parse_error(&self) -> bool {
        matches!(self, Error::Syntax { .. } | Error::Shape { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
