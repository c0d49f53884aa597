use thiserror::Error;

/// Errors raised by the engine. Every fallible public operation returns one
/// of these rather than panicking.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative degree {0} for a symmetric-function coefficient")]
    NegativeDegree(i64),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("node {node} out of range for rank {rank}")]
    UnknownNode { node: usize, rank: usize },
    #[error("invalid Cartan data: {0}")]
    Cartan(String),
    #[error("invalid window: dmin {0} > dmax {1}")]
    Window(i64, i64),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("element contains H-letters where only E-letters are allowed")]
    HLetters,
    #[error("mixed nodes: straightening expects only E-letters of node {0}")]
    MixedNodes(usize),
    #[error("element is not weight-homogeneous")]
    Inhomogeneous,
    #[error("window too small: {0}")]
    WindowClosure(String),
    #[error("element does not lie in Z'_{{{node},{k}}}")]
    NotInZ { node: usize, k: i64 },
    #[error("local nilpotency cap {cap} exceeded for F'_{{{node},{n}}}")]
    NilpotencyCap { node: usize, n: i64, cap: i64 },
    #[error("insufficient padding: jet level {have} given, level {need} required")]
    Padding { have: String, need: String },
}

pub type Result<T> = std::result::Result<T, Error>;
