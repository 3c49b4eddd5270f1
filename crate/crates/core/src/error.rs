use crate::rational::Rational;
use thiserror::Error;

/// Errors shared across the crate. Domain violations (level below 2,
/// enumeration bound overruns, modulus mixups) are recoverable and reported;
/// internal consistency failures panic instead, since they indicate a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("level {level} is below the minimum {minimum} for this computation")]
    LevelTooSmall { level: u32, minimum: u32 },

    #[error("level {level} exceeds the enumeration bound {bound}")]
    BoundExceeded { level: u32, bound: u32 },

    #[error("{0} must be positive to factor")]
    FactorNonPositive(u64),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("no fixed-point action of order {0} occurs on these surfaces")]
    UnsupportedOrder(u32),

    #[error("self-intersection {0} is not an integer")]
    NonIntegralSelfIntersection(Rational),

    #[error("inconsistent Seifert data: {0}")]
    InconsistentSeifert(String),
}

pub type Result<T> = std::result::Result<T, Error>;
