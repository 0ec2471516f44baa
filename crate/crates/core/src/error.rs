use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("instance too large for exhaustive search: {edges} edges (limit {limit})")]
    Size { edges: usize, limit: usize },
    #[error("infeasible: {0}")]
    Infeasible(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
