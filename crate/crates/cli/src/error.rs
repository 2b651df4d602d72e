use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("quadrature did not converge: {0}")]
    NotConverged(String),
    #[error(transparent)]
    Numeric(#[from] phasecorr::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::NotConverged(_) => 3,
            CliError::Numeric(_) | CliError::Io(_) => 1,
        }
    }
}
