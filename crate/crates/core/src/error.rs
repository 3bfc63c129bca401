use thiserror::Error;

/// Errors raised by construction, routing and verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid port count {0}: expected an even number >= 2")]
    InvalidPorts(usize),
    #[error("invalid demand: {0}")]
    InvalidDemand(String),
    #[error("incomplete switch states: {0}")]
    IncompleteStates(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
