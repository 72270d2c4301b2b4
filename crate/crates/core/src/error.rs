use crate::alphabet::ParityClass;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("letters must be positive integers")]
    InvalidLetter,
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("letter {letter} is outside the alphabet {{{small},{large}}}")]
    LetterOutsideAlphabet { letter: u32, small: u32, large: u32 },
    #[error("the pattern word must be nonempty")]
    EmptyPattern,
    #[error("word is not smooth over the given alphabet")]
    NotSmooth,
    #[error("operation is not defined for parity class {0:?}")]
    UnsupportedParity(ParityClass),
    #[error("measure system is underdetermined; refusing to evaluate")]
    MeasureUnderdetermined,
    #[error("inconsistent measure system: {0}")]
    MeasureInconsistent(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
