use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("division by zero in F_{q}")]
    DivisionByZero { q: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("rank error: expected rank {expected}, found {found}")]
    Rank { expected: usize, found: usize },

    #[error("capacity exceeded: {what} needs {needed}, budget is {budget}; {advice}")]
    Capacity {
        what: String,
        needed: String,
        budget: String,
        advice: String,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn capacity(
        what: impl Into<String>,
        needed: impl ToString,
        budget: impl ToString,
        advice: impl Into<String>,
    ) -> Self {
        Error::Capacity {
            what: what.into(),
            needed: needed.to_string(),
            budget: budget.to_string(),
            advice: advice.into(),
        }
    }
}
