use thiserror::Error;

/// Every failure the toolkit can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{what} of size {size} exceeds the configured cap {cap}")]
    SizeCapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("extension degree {0} is outside the supported range 1..={max}", max = crate::field::MAX_DEGREE)]
    UnsupportedDegree(usize),

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different fields")]
    MixedFields,

    #[error("field degree {m} is not 2*{k}")]
    DegreeMismatch { m: usize, k: u32 },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("exponent evaluates to negative value {0}")]
    NegativeExponent(i128),

    #[error("symbol '{0}' has no binding")]
    UnboundSymbol(char),

    #[error("{num} is not divisible by {den}")]
    Divisibility { num: i128, den: i128 },

    #[error("integer overflow while evaluating an exponent")]
    Overflow,

    #[error("polynomial is not of the shape x^r h(x^(q-1)): {0}")]
    NotNihoShaped(String),

    #[error("denominator vanishes at the evaluation point")]
    DenominatorZero,

    #[error("permutation methods disagree: {0}")]
    MethodDisagreement(String),

    #[error("characteristic {0} is not supported here (need 3 or 5)")]
    UnsupportedCharacteristic(u64),

    #[error("k = {0} is odd; an even k is required")]
    KParity(u32),

    #[error("input is not a permutation polynomial: {0}")]
    NotPermutation(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
