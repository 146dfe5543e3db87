use thiserror::Error;

/// Errors surfaced by every module. The CLI maps these to exit codes:
/// `Input` -> 2, `Capability` and `Budget` -> 3, `Check` and
/// `Inconsistency` -> 1.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or mismatched input (bad subset, palette mismatch, parse
    /// failure). The message names the offending field or edge.
    #[error("input error: {0}")]
    Input(String),

    /// The request exceeds a hard capability cap (canonicalization size,
    /// oracle enumeration cap, exact-mode state space).
    #[error("capability error: {0}")]
    Capability(String),

    /// A search budget (node or time cap) ran out before an exact answer
    /// was established.
    #[error("budget exhausted: {0}")]
    Budget(String),

    /// A verified property check came out false (used by the CLI `verify`
    /// suites).
    #[error("check failed: {0}")]
    Check(String),

    /// An internal invariant the construction relies on was violated by
    /// the data; surfaced, never patched over.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }

    /// The bare message, without the category prefix.
    pub fn message(&self) -> &str {
        match self {
            Error::Input(m)
            | Error::Capability(m)
            | Error::Budget(m)
            | Error::Check(m)
            | Error::Inconsistency(m) => m,
        }
    }

    /// CLI exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) => 2,
            Error::Capability(_) | Error::Budget(_) => 3,
            Error::Check(_) | Error::Inconsistency(_) => 1,
        }
    }
}
