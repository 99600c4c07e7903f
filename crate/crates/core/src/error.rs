use thiserror::Error;

/// Every failure the math core can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("not irreducible: {0}")]
    NotIrreducible(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("reduction is undefined at the infinite place")]
    InfinitePlace,
    #[error("need at least two finite points, got {0}")]
    TooFewPoints(usize),
    #[error("degenerate polynomial: {0}")]
    Degenerate(String),
    #[error("ambiguous cancellation: {0}")]
    AmbiguousCancellation(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("w divides u: min-rule unsupported")]
    WDividesU,
    #[error("largeness condition violated: {0}")]
    Largeness(String),
    #[error("case boundary: {0}")]
    Boundary(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("budget exceeded: need {needed}, budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("rule table missing degree {degree} for element {element}")]
    MissingRule { element: usize, degree: usize },
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("invalid piecewise-linear function: {0}")]
    InvalidPsi(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("j = 0 out of scope")]
    JZero,
}

pub type Result<T> = std::result::Result<T, CoreError>;
