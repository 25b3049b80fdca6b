use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("d must be at least 2, got {0}")]
    InvalidDigit(u32),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("kernel indices belong to different sequences (d={0} vs d={1})")]
    MismatchedDigit(u32, u32),

    #[error("empty word")]
    EmptyWord,

    #[error("invalid letter {0:?}, expected 'a' or 'b'")]
    InvalidAlphabet(char),

    #[error("{0} is not a factor of F_{{{1},inf}}")]
    NotAFactor(String, u32),

    #[error("product does not reduce to a pure word or pure inverse word")]
    IrreducibleProduct,

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("word of length {len} exceeds the size cap of {cap} letters")]
    CapExceeded { len: u64, cap: usize },
}

impl Error {
    /// True for errors caused by arithmetic overflow or the word-size cap.
    pub fn is_overflow(&self) -> bool {
        matches!(self, Error::Overflow(_) | Error::CapExceeded { .. })
    }
}
