use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// Checked integer arithmetic overflowed.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// An enumeration would produce more items than allowed.
    #[error("budget exceeded: {count} solutions exceed the cap of {cap}")]
    BudgetExceeded { count: u128, cap: u128 },

    /// A move site does not match the local pattern the move requires.
    #[error("pattern error: {0}")]
    Pattern(String),

    /// Diagram/coloring mismatch (missing arcs, out-of-range values, ...).
    #[error("structural error: {0}")]
    Structural(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("json error: {0}")]
    Json(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn pattern(msg: impl Into<String>) -> Self {
        Error::Pattern(msg.into())
    }

    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
