use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{what} outside its domain: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget {
        what: &'static str,
        needed: String,
        limit: String,
    },

    #[error("families belong to different context graphs")]
    GraphMismatch,

    #[error("certificate check failed: {0}")]
    Certificate(String),
}

impl Error {
    pub(crate) fn budget(what: &'static str, needed: impl ToString, limit: impl ToString) -> Self {
        Error::Budget {
            what,
            needed: needed.to_string(),
            limit: limit.to_string(),
        }
    }

    /// True for errors that signal a resource limit rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
