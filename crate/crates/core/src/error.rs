use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("node {0} is not in the tree")]
    NodeNotFound(u32),

    #[error("node {0} is not on the spine")]
    NotOnSpine(u32),

    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("cannot fetch from an empty tree")]
    EmptyTree,

    #[error("fetch count {k} is outside 0..={size}")]
    FetchOutOfRange { k: usize, size: usize },

    #[error("height {0} is below -1")]
    InvalidHeight(i64),

    #[error("level N must be greater than 1, got {0}")]
    InvalidLevel(u64),

    #[error("not an upper segment: {0}")]
    NotUpperSegment(String),

    #[error("beta witness for r={r} failed verification: {reason}")]
    BetaWitness { r: u32, reason: String },

    #[error("malformed digit file: {0}")]
    DigitFormat(String),

    #[error("checkpoint line {line}: {msg}")]
    Checkpoint { line: usize, msg: String },

    #[error("bound violated: {0}")]
    BoundViolation(String),

    #[error("counter overflow while {0}")]
    Overflow(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
