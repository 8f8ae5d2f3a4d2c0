use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime in 3..=61")]
    InvalidPrime(u64),

    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,

    #[error("divisor has an exterior part; only purely polynomial divisors are supported")]
    DivisorHasExteriorPart,

    #[error("polynomial is not bihomogeneous")]
    NotHomogeneous,

    #[error("zero polynomial has no degree")]
    ZeroPolynomial,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("polynomial is not in the span of the Dickson-Mui basis: {0}")]
    NotInSpan(String),

    #[error("Dickson-Mui candidate basis is linearly dependent in bidegree ({ext}, {degree})")]
    AmbiguousBasis { ext: u32, degree: u64 },

    #[error("negative exponent in closed form: {0}")]
    NegativeExponent(String),

    #[error("invalid Milnor index: {0}")]
    InvalidIndex(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("operands live over different rings")]
    RingMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
