use thiserror::Error;

/// Errors raised by the estimator pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("derivative of order {order} is not available for {kind} frontiers")]
    UnsupportedDerivative { kind: &'static str, order: usize },

    #[error("rejection sampler gave up after {attempts} draws ({accepted} accepted)")]
    SamplingFailure { attempts: u64, accepted: usize },

    #[error("linear program is infeasible (relaxation level {relaxation_level}); most violated rows: {rows:?}")]
    Infeasible {
        relaxation_level: u32,
        rows: Vec<(usize, f64)>,
    },

    #[error("solver stopped with status {0:?}")]
    Solver(crate::simplex::Status),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("study failed: {0}")]
    Study(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
