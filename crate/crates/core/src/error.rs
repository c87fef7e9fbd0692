//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A fixture that fails to parse or violates its declared invariants.
    #[error("malformed fixture: {0}")]
    Fixture(String),
    /// A mathematical consistency check failed.
    #[error("check failed: {0}")]
    Check(String),
}

pub type Result<T> = std::result::Result<T, Error>;
