use thiserror::Error;

/// Errors raised by the library. Input errors describe malformed or
/// inconsistent arguments; domain errors describe a mathematically
/// impossible request (e.g. an equation for an independent element).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid letter '{ch}' at position {pos} in \"{input}\"")]
    BadLetter { input: String, pos: usize, ch: char },

    #[error("cannot parse \"{input}\": {reason}")]
    Parse { input: String, reason: String },

    #[error("word \"{word}\" uses letters outside the alphabet {alphabet}")]
    OutsideAlphabet { word: String, alphabet: String },

    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("alphabets overlap on letter '{0}'")]
    OverlappingAlphabets(char),

    #[error("alphabet {sub} is not a prefix of {full}")]
    NotPrefix { sub: String, full: String },

    #[error("vertex {0} does not exist")]
    NoSuchVertex(usize),

    #[error("\"{0}\" is not an element of the subgroup")]
    NotInSubgroup(String),

    #[error("\"{0}\" does not depend on the subgroup: no nontrivial equation exists")]
    NotDependent(String),

    #[error("invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than the mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::BadLetter { .. }
                | Error::Parse { .. }
                | Error::OutsideAlphabet { .. }
                | Error::Arity { .. }
                | Error::OverlappingAlphabets(_)
                | Error::NotPrefix { .. }
                | Error::NoSuchVertex(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
