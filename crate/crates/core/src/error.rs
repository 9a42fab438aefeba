use thiserror::Error;

/// Failures of the tape engine itself. A `TapeFault` from a generator
/// program is always a bug in that program.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TapeError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("tape fault on tape {tape} at cell {head}: {reason}")]
    TapeFault { tape: usize, head: usize, reason: String },
    #[error("output fault: symbol {symbol} at cell {index} is outside the output alphabet")]
    OutputFault { index: usize, symbol: String },
}

/// Errors surfaced by the group modules and the framework.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not in language: {0}")]
    NotInLanguage(String),
    #[error("bad word: {0}")]
    BadWord(String),
    #[error("no case matched for {0} (guess-and-check bug)")]
    NoCaseMatched(String),
    #[error(transparent)]
    Tape(#[from] TapeError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
