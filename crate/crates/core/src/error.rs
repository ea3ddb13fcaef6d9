use thiserror::Error;

/// Errors raised by the analyses in this crate.
///
/// The variants mirror the failure classes callers need to tell apart: a
/// shape mismatch is a caller bug, while a violated precondition or an
/// out-of-hypothesis parameter is a property of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("word is not in the subgroup: {0}")]
    Membership(String),

    #[error("consistency error: {0}")]
    Consistency(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("outside the hypotheses of the result: {0}")]
    OutOfHypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;
