use thiserror::Error;

/// Errors produced by sieving, summation, primitivity checking and
/// verification. Domain violations are reported before any computation
/// starts; capacity checks happen at entry, never mid-loop.
#[derive(Debug, Error)]
pub enum Error {
    #[error("sieve limit {limit} exceeds the supported ceiling {ceiling}")]
    SieveCapacity { limit: u64, ceiling: u64 },

    #[error("query {x} exceeds the table limit {limit}")]
    OutOfRange { x: u64, limit: u64 },

    #[error("Erdos term is undefined for a = {a}: requires a >= 2 (ln 1 = 0)")]
    TermDomain { a: u64 },

    #[error("bound must be at least 2, got {bound}")]
    BoundTooSmall { bound: u64 },

    #[error("bound {bound} exceeds the pair-product capacity {max} (bound^2 must fit in 64 bits)")]
    PairCapacity { bound: u64, max: u64 },

    #[error("element {value} is below 2; 1 divides every integer")]
    ElementTooSmall { value: u64 },

    #[error("not primitive: {a} divides {b}")]
    NotPrimitive { a: u64, b: u64 },

    #[error("threshold must be at least 2, got {threshold}")]
    ThresholdTooSmall { threshold: u64 },

    #[error("stride must be at least 1")]
    ZeroStride,

    #[error("tail estimate requires x >= 3, got {x}")]
    TailDomain { x: u64 },

    #[error("invalid prime table cache: {reason}")]
    InvalidCache { reason: String },

    #[error("line {line}: cannot parse {text:?} as an integer")]
    ParseSequence { line: usize, text: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
