use thiserror::Error;

/// Errors surfaced by braid-word operations and the algorithms built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("strand counts differ: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("generator index {index} out of range for {strands} strands")]
    LetterOutOfRange { index: u32, strands: usize },

    #[error("braid group needs at least 2 strands (got {0})")]
    TooFewStrands(usize),

    #[error("empty word has no main generator")]
    EmptyWord,

    #[error("handle reduction exceeded the step cap of {cap} rewrites")]
    StepCapExceeded { cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot parse braid word {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, BraidError>;
