use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-domain input (bad word, bad pattern, unsupported
    /// argument range).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A rational generating function whose denominator cannot be normalized
    /// to constant term 1 by an exact integer division.
    #[error("series not expandable: {0}")]
    NonExpandable(String),

    /// Two independent computations of the same quantity disagreed. This
    /// always indicates a bug and is surfaced rather than silently resolved.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
