use thiserror::Error;

use crate::arith::Factorization;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The factoring budget ran out. `partial` holds the primes found so far,
    /// `cofactor` the unfactored remainder; `partial.value() * cofactor == n`.
    #[error("factoring effort exhausted, unfactored cofactor {cofactor}")]
    EffortExhausted {
        partial: Factorization,
        cofactor: u128,
    },

    #[error("exponent {exponent} has the wrong parity for {context}")]
    ParityViolation { context: &'static str, exponent: u32 },

    #[error("prime {p} divides x1*y1, rank of apparition undefined")]
    DividesBase { p: u128 },

    #[error("value does not fit in 128 bits: {0}")]
    Overflow(&'static str),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Failures that make a candidate "unresolved" rather than decided.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::EffortExhausted { .. } | Error::Overflow(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
