use thiserror::Error;

/// Errors produced by the analysis library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} is reducible over F_p")]
    ReducibleModulus(u64),
    #[error("modulus {modulus} is not a monic polynomial of degree {degree}")]
    DegreeMismatch { modulus: u64, degree: u32 },
    #[error("field of order {p}^{n} exceeds the supported size")]
    FieldTooLarge { p: u32, n: u32 },
    #[error("{s} does not divide {n}")]
    NotADivisor { s: u32, n: u32 },
    #[error("division by zero")]
    DivideByZero,
    #[error("value {value} at input {input} leaves the codomain GF(p^{s})")]
    CodomainViolation { input: u32, value: u32, s: u32 },
    #[error("incompatible domains or codomains")]
    DomainMismatch,
    #[error("function is not a permutation")]
    NotAPermutation,
    #[error("c = {0} is not a legal multiplier (zero or outside the codomain subfield)")]
    InvalidC(u32),
    #[error("lemma hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("function has no DO origin")]
    NotDoOrigin,
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("work estimate {needed} exceeds limit {limit}")]
    WorkLimitExceeded { needed: u128, limit: u128 },
    #[error("exact sum could need {bits} bits, beyond the 127-bit coefficient range")]
    CoefficientOverflow { bits: u32 },
    #[error("character sum expected to be rational and divisible, got {0}")]
    NonRationalResult(String),
    #[error("image of the graph is not the graph of a function")]
    NotAGraph,
    #[error("map is not c-affine for c = {0}")]
    NotCAffine(u32),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
