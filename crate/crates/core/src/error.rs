use thiserror::Error;

/// Errors raised by the computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime number")]
    NotPrime(u64),

    /// An argument was outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Exact division was requested but the divisor does not divide the dividend.
    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { dividend: String, divisor: String },

    /// The representation has a trivial summand where only positive weights are allowed.
    #[error("representation {0} has a trivial summand (weight 0)")]
    TrivialSummand(String),

    /// Two independent computations of the same quantity disagreed.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("cannot parse representation {0:?}: expected `0`, `d:<n>` or `w:<c1,c2,...>`")]
    RepSyntax(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
