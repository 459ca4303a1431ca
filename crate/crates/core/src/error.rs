use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("invalid extension degree {0}")]
    InvalidDegree(usize),
    #[error("no irreducible polynomial found for q={q}, m={m}")]
    NoIrreducible { q: u32, m: usize },
    #[error("element does not belong to this field")]
    ForeignElement,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("empty input")]
    Empty,
    #[error("evaluation points are not linearly independent over the base field")]
    InvalidPoints,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("{erased} erasures leave fewer than {k} positions")]
    TooManyErasures { erased: usize, k: usize },
    #[error("no codeword within the decoding radius")]
    DecodeFailure,
    #[error("infeasible adversary: {0}")]
    InfeasibleAdversary(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("inadmissible helper set: {0}")]
    InadmissibleHelpers(String),
    #[error("group of node {node} has too few survivors ({available} < {needed})")]
    GroupUnrepairable {
        node: usize,
        available: usize,
        needed: usize,
    },
    #[error("repair failed: {0}")]
    RepairFailure(String),
    #[error("insufficient nodes: have {have}, need {need}")]
    InsufficientNodes { have: usize, need: usize },
    #[error("adversary limit exceeded: at most {t} compromised nodes")]
    AdversaryLimit { t: usize },
    #[error("node {0} was already statically corrupted")]
    DoubleCorruption(usize),
    #[error("node index {0} out of range")]
    NodeOutOfRange(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
