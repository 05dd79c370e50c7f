use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TlError {
    #[error("invalid q mode {0:?} (expected \"generic\" or \"root:<m>\" with m >= 3)")]
    InvalidMode(String),
    #[error("operation requires a root-of-unity mode")]
    RequiresRootOfUnity,
    #[error("operation requires generic mode")]
    RequiresGeneric,
    #[error("operation requires q = ±i (root:4), got {0}")]
    WrongMode(String),
    #[error("generator index {i} out of range for n = {n}")]
    GeneratorOutOfRange { n: usize, i: usize },
    #[error("strand count mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("label ({n},{p}) out of range")]
    LabelOutOfRange { n: usize, p: usize },
    #[error("size {n} exceeds the configured bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("({n},{p}),({n},{p2}) is not a symmetric pair")]
    NotSymmetricPair { n: usize, p: usize, p2: usize },
    #[error("chain condition unmet: {0}")]
    ChainUnmet(String),
    #[error("infinite string count where a finite one is required")]
    InfiniteStrings,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, TlError>;
