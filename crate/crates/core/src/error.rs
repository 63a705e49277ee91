use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{field} out of domain: {reason}")]
    Domain { field: &'static str, reason: String },

    #[error("series not converged at xi = {xi}: last term {last_term:e} vs running sum {sum:e}")]
    NotConverged { xi: f64, last_term: f64, sum: f64 },

    #[error("Heun series does not truncate (largest tail coefficient {tail:e} relative to the head)")]
    NotTruncated { tail: f64 },

    #[error("r_max = {r_max} too small: effective potential {potential:e} at the outer edge is below level {level:e}")]
    BoxTooSmall {
        r_max: f64,
        potential: f64,
        level: f64,
    },

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("{0}")]
    Usage(String),

    #[error("root index {index} out of range ({count} roots)")]
    RootIndex { index: usize, count: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(field: &'static str, reason: impl Into<String>) -> Error {
    Error::Domain {
        field,
        reason: reason.into(),
    }
}
