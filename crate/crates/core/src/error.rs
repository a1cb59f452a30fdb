use thiserror::Error;

/// Errors raised by the library.
///
/// `Usage` covers malformed requests (mismatched orders, unknown names,
/// unmet preconditions of a check); `Domain` covers mathematically
/// undefined requests such as inverting a series with a non-unit constant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
