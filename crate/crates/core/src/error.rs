use crate::arith::Integer;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{op}: {value} is outside the domain ({requirement})")]
    Domain {
        op: &'static str,
        value: String,
        requirement: &'static str,
    },
    #[error("duplicate element {0}")]
    Duplicate(Integer),
    #[error("zero element is not allowed")]
    ZeroElement,
    #[error("set size {0} outside [2, 7]")]
    Size(usize),
    #[error("malformed integer token {0:?}")]
    Parse(String),
    #[error("degenerate construction: {0}")]
    Degenerate(String),
    #[error("invalid search configuration: {0}")]
    Config(String),
    #[error("checkpoint {path}: {reason}")]
    Checkpoint { path: String, reason: String },
    #[error("fixture line {line}: {reason}")]
    Fixture { line: usize, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(
        op: &'static str,
        value: impl ToString,
        requirement: &'static str,
    ) -> Self {
        Error::Domain {
            op,
            value: value.to_string(),
            requirement,
        }
    }
}
