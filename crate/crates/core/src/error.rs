use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index out of range: {0}")]
    Index(String),
    #[error("no image for generator {0}")]
    MissingImage(String),
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(u32, u32),
    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),
    #[error("no conjugation rule applies: {0}")]
    NoRule(String),
    #[error("word is not pure")]
    NotPure,
    #[error("letter {0} is outside the generator table")]
    OutsideTable(String),
    #[error("word is not in the kernel of phi")]
    NotInKernel,
    #[error("word length cap of {0} letters exceeded")]
    LengthCap(usize),
    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
