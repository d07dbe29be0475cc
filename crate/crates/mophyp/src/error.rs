use thiserror::Error;

/// Errors produced by the construction and analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter system: {0}")]
    InvalidParams(String),
    #[error("invalid multi-index {index} for this setting: {reason}")]
    InvalidMultiIndex { index: String, reason: String },
    #[error("invalid weight id {0} for this setting")]
    InvalidWeight(String),
    #[error("duplicate pole location {0}")]
    DuplicatePole(String),
    #[error("numerator degree {deg} exceeds pole budget {budget} and no polynomial part was requested")]
    DegreeOverflow { deg: usize, budget: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("rank-deficient moment system: {0}")]
    RankDeficient(String),
    #[error("series did not converge: {0}")]
    NonConvergence(String),
    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),
    #[error("root isolation failed: {0}")]
    RootIsolation(String),
    #[error("argument outside the support: {0}")]
    OutsideSupport(String),
    #[error("incompatible matrix chain: {0}")]
    BadEnsemble(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
