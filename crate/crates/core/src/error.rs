use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not an odd prime in [3, 2^31]")]
    InvalidModulus(u64),

    #[error("operands belong to different fields (q = {left} vs q = {right})")]
    FieldMismatch { left: u64, right: u64 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("coordinate {value} is out of range for q = {q}")]
    CoordinateOutOfRange { value: u64, q: u64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operation requires dimension {required}, got {got}")]
    UnsupportedDimension { required: usize, got: usize },

    #[error("grid of {requested} cells exceeds the capacity of {limit}")]
    Capacity { requested: u128, limit: u128 },

    #[error("grid shapes differ")]
    ShapeMismatch,

    #[error("point set is empty")]
    EmptySet,

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("work estimate {estimate} exceeds budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },

    #[error("q = {q} is too small: {reason}")]
    ModulusTooSmall { q: u64, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
