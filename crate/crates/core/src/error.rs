use thiserror::Error;

use crate::path::GridPoint;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid step character {found:?} at position {position}")]
    Parse { position: usize, found: char },

    #[error("invalid base path specifier {0:?}")]
    BadSpecifier(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("endpoint mismatch: ({0}, {1}) vs ({2}, {3})")]
    EndpointMismatch(usize, usize, usize, usize),

    #[error("point {0} lies below the base path")]
    BelowBase(GridPoint),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid forest: {0}")]
    InvalidForest(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
