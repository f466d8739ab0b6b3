use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or quantum numbers; exit code 2.
    #[error("{0}")]
    Input(String),
    /// Quadrature or other numerical failure; exit code 1.
    #[error("{0}")]
    Numerical(String),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
    #[error("output: {0}")]
    Csv(#[from] csv::Error),
    #[error("output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            _ => 1,
        }
    }
}

impl From<hahnium::Error> for CliError {
    fn from(e: hahnium::Error) -> Self {
        match e {
            hahnium::Error::Domain(_) => CliError::Input(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}
