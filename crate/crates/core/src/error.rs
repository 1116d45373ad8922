//! Error type shared by all modules.

use thiserror::Error;

/// Errors raised by library operations.
///
/// A theorem whose preconditions fail is *not* an error: bound functions
/// return a not-applicable result instead. Errors cover malformed input,
/// missing data and resource caps.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("table overflow: n = {n} exceeds the cap {cap}")]
    TableOverflow { n: usize, cap: usize },

    #[error("enumeration cap exceeded: {elements} elements > cap {cap} (roughly {estimate:.3e} subpartitions)")]
    EnumerationCap {
        elements: usize,
        cap: usize,
        estimate: f64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("missing model data: {0}")]
    Missing(String),

    #[error("no root in the admissible bracket: {0}")]
    NoRoot(String),
}

impl Error {
    /// True for errors that signal an unmet mathematical precondition
    /// rather than a malformed request.
    pub fn is_precondition(&self) -> bool {
        matches!(self, Error::Precondition(_) | Error::NoRoot(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidArgument(msg()))
    }
}
