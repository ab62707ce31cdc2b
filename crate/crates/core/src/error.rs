use thiserror::Error;

use crate::exact_arith::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A divisibility or non-negativity theorem failed to hold. Always a defect.
    #[error("internal invariant violated: {0}")]
    Arith(#[from] ArithError),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("malformed path problem: {0}")]
    InvalidProblem(String),
    #[error("path count {count} exceeds cap {cap}")]
    CapExceeded { count: String, cap: usize },
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("output: {0}")]
    Output(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
