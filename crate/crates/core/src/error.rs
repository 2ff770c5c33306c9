use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported field cardinality {0}; expected one of 2, 3, 4, 5, 7")]
    UnsupportedCardinality(u32),
    #[error("element {value} is not valid in GF({q})")]
    InvalidElement { value: u32, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("block is singular")]
    SingularBlock,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("generator does not belong to the ambient kind: {0}")]
    KindMismatch(String),
    #[error("enumeration budget exceeded: need {needed}, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("no S-adapted hyperplane exists")]
    NoAdaptedHyperplane,
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("dimension {dim} does not exceed the threshold {threshold}")]
    ThresholdNotMet { dim: usize, threshold: usize },
    #[error("found a member of rank {found} above the bound {bound}")]
    RankBoundViolated { found: usize, bound: usize },
    #[error("symmetric recognition needs more than two field elements (got GF({0}))")]
    UnsupportedField(u32),
    #[error("dimension hypothesis of the lifting step fails: {0}")]
    DimensionTooSmall(String),
    #[error("every common annihilator has zero last entry")]
    AnnihilatorDegenerate,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
