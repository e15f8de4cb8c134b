use thiserror::Error;

/// Harness failures, each mapped to a stable process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl From<vnfplace::scenario::ScenarioError> for CliError {
    fn from(e: vnfplace::scenario::ScenarioError) -> Self {
        use vnfplace::scenario::ScenarioError;
        match e {
            ScenarioError::Io { .. } => CliError::Io(e.to_string()),
            ScenarioError::Parse { .. } => CliError::Parse(e.to_string()),
            ScenarioError::Config(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<vnfplace::moea::SolverError> for CliError {
    fn from(e: vnfplace::moea::SolverError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<vnfplace::oracle::OracleError> for CliError {
    fn from(e: vnfplace::oracle::OracleError) -> Self {
        CliError::Cap(e.to_string())
    }
}
