use thiserror::Error;

/// Errors reported by the library.
///
/// The `Display` prefixes (`capacity:`, `unsupported-acceptance:`, ...) are
/// relied upon by the command-line frontend.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid-automaton: {0}")]
    InvalidAutomaton(String),
    #[error("contract: {0}")]
    Contract(String),
    #[error("capacity: {0}")]
    Capacity(String),
    #[error("unsupported-acceptance: {0}")]
    UnsupportedAcceptance(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("syntax: line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("alphabet-mismatch: {0}")]
    AlphabetMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}
