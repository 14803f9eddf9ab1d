use thiserror::Error;

/// Errors raised by automaton construction and the inclusion procedure.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed automaton: {0}")]
    Malformed(String),
    #[error("automata are defined over different alphabets")]
    AlphabetMismatch,
    #[error("invalid symbol name {0:?}")]
    InvalidSymbol(String),
    #[error("a period must be a non-empty word")]
    EmptyPeriod,
    #[error("period keys compared relative to different anchors")]
    AnchorMismatch,
    #[error("deadline exceeded")]
    Timeout,
    #[error("oracle refused: {0}")]
    Refused(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
