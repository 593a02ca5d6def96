use torsion_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    /// 2 for anything the caller got wrong, 1 for refusals and failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                Error::BudgetExceeded { .. }
                | Error::Overflow(_)
                | Error::ResidueRingTooLarge { .. }
                | Error::Containment(_) => 1,
                _ => 2,
            },
            CliError::Json(_) | CliError::Csv(_) => 1,
        }
    }
}
