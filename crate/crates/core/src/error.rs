use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A point lies outside the domain an operation requires.
    #[error("point outside domain: {0}")]
    DomainViolation(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    /// Input lies on the branch cut of a closed-form map.
    #[error("input on branch cut: {0}")]
    BranchViolation(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("self-test failed: {0}")]
    SelfTestFailure(String),
    #[error("no finite constant: {0}")]
    NoFiniteConstant(String),
    #[error("insufficient samples: need {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
