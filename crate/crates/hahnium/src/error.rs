use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("denominator parameter {param} vanishes at term {index}")]
    DenominatorZero { param: usize, index: u64 },
    #[error("quadrature did not converge: error estimate {estimate:.3e} after {evaluations} evaluations")]
    NonConvergence { estimate: f64, evaluations: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
