use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("computation did not converge: {0}")]
    NotConverged(String),
    #[error("missing branch: {0}")]
    MissingBranch(String),
    #[error("internal inconsistency: {0}")]
    Invariant(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::NotConverged(_) => 3,
            CliError::MissingBranch(_) => 4,
            CliError::Invariant(_) => 5,
        }
    }
}

impl From<wavebound::Error> for CliError {
    fn from(e: wavebound::Error) -> Self {
        use wavebound::Error as E;
        match e {
            E::NoBracket { .. } | E::NotConverged { .. } | E::PossibleDegeneracy { .. } => {
                CliError::NotConverged(e.to_string())
            }
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
