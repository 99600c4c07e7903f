use drinfeld_smb::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("invalid config: {0}")]
    Validation(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    /// 2 validation, 3 hypothesis, 4 verification, 5 budget.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => 2,
            CliError::Core(e) => match e {
                CoreError::Parse(_)
                | CoreError::InvalidField(_)
                | CoreError::NotIrreducible(_)
                | CoreError::InvalidModule(_)
                | CoreError::WDividesU
                | CoreError::UnsupportedShape(_)
                | CoreError::InfinitePlace
                | CoreError::DivisionByZero => 2,
                CoreError::HypothesisFailed(_)
                | CoreError::Boundary(_)
                | CoreError::AmbiguousCancellation(_)
                | CoreError::Largeness(_)
                | CoreError::JZero => 3,
                CoreError::Inconsistent(_)
                | CoreError::MissingRule { .. }
                | CoreError::InvalidPsi(_)
                | CoreError::TooFewPoints(_)
                | CoreError::Degenerate(_) => 4,
                CoreError::BudgetExceeded { .. } | CoreError::Overflow(_) => 5,
            },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "validation",
            3 => "hypothesis_failed",
            4 => "verification",
            _ => "budget",
        }
    }
}
