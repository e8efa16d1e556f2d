use thiserror::Error;

/// Errors raised by game construction, strategy evaluation and the analyses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("input size m={0} must be even and at least 2")]
    InvalidSize(usize),
    #[error("input size m={m} exceeds the supported maximum of {max} for this operation")]
    TooLarge { m: usize, max: usize },
    #[error("index {index} out of range for m={m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("bit string length {len} is not in 1..=64")]
    InvalidLength { len: usize },
    #[error("bit strings have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("invalid bit string {0:?}")]
    InvalidBits(String),
    #[error("edge joins vertex {0} to itself")]
    SelfPair(usize),
    #[error("vertex {0} appears in more than one pair")]
    Overlap(usize),
    #[error("vertex {0} is not covered by any pair")]
    MissingVertex(usize),
    #[error("malformed edge {0:?}")]
    MalformedEdge(String),
    #[error("{0}")]
    Shape(String),
    #[error("edge {edge} is not part of matching {matching}")]
    EdgeNotInMatching { edge: String, matching: String },
    #[error("strategy is partial: Bob is undefined on {undefined} matching(s)")]
    PartialStrategy { undefined: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search space of {space} Bob tables exceeds the budget of {budget}")]
    BudgetExceeded { space: String, budget: u64 },
}

pub type Result<T> = std::result::Result<T, GameError>;
