//! Error taxonomy shared by the library and the CLI.
//!
//! Every variant maps onto a fixed process exit code so shell callers can
//! distinguish bad parameters from regime refusals, verification failures,
//! and blown budgets.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Precondition on an operation's arguments was violated.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// The requested (n, p, ell) point falls outside every supported theorem
    /// window. The message names the violated window.
    #[error("regime refusal: {0}")]
    Regime(String),

    /// A constructed path system failed verification.
    #[error("verification failure: {0}")]
    Verification(String),

    /// An exact computation would exceed its hard execution budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// Malformed input file or configuration.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 = parameter, 3 = regime refusal,
    /// 4 = verification failure, 5 = budget exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter(_) | Error::Parse(_) => 2,
            Error::Regime(_) => 3,
            Error::Verification(_) => 4,
            Error::Budget(_) => 5,
            Error::Io(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parameter<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}

pub(crate) fn budget<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Budget(msg.into()))
}
