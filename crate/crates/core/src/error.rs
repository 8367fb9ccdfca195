use thiserror::Error;

use crate::term::Position;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A step of the position does not match the shape of the node it is applied to.
    #[error("position {position} is not valid: step {at} leaves the term")]
    PositionInvalid { position: Position, at: usize },

    #[error("position {0} is not locally closed")]
    NotLocallyClosed(Position),

    #[error("free variable {index} has no entry in a substitution of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("term is not closed")]
    NotClosed,

    /// Hashes produced by different hashing sessions (or modes) were combined.
    #[error("hashes from different hashing sessions were combined")]
    ModeMismatch,

    #[error("term of size {size} exceeds the limit of {limit}")]
    TermTooLarge { size: usize, limit: usize },

    #[error("there is no closed term of size {0}")]
    NoTermOfSize(usize),

    #[error("{line}:{column}: expected {}", .expected.join(" or "))]
    Syntax {
        line: usize,
        column: usize,
        expected: Vec<&'static str>,
    },

    #[error("{line}:{column}: unexpected trailing input")]
    TrailingInput { line: usize, column: usize },

    #[error("{line}:{column}: de Bruijn index does not fit in 63 bits")]
    IndexOverflow { line: usize, column: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
