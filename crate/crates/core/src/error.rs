use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An exact division left a remainder.  For in-scope inputs this is a bug.
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("division by zero")]
    DivisionByZero,
    /// A specialized coefficient is not a Laurent polynomial.
    #[error("non-integral coefficient {coeff} at E^({a}) F^({b}) 1_{weight}")]
    NonIntegral {
        weight: i64,
        a: u32,
        b: u32,
        coeff: String,
    },
    #[error("family {family} pairs with {expected} weights, got weight {weight}")]
    ParityMismatch {
        family: &'static str,
        expected: &'static str,
        weight: i64,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
