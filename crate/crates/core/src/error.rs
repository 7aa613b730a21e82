use thiserror::Error;

/// Errors raised by field, subspace, transform and theorem operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed descriptor `{0}`")]
    Descriptor(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("base field order {0} exceeds 65536")]
    FieldTooLarge(u64),

    #[error("invalid degree: {0}")]
    InvalidDegree(String),

    #[error("no irreducible polynomial of degree {0} found")]
    NoIrreducible(usize),

    #[error("division by zero")]
    DivisionByZero,

    #[error("degree cap {cap} exceeded (needed {needed})")]
    DegreeCap { cap: usize, needed: usize },

    #[error("operands live in different ambients")]
    MixedAmbients,

    #[error("element does not belong to the ambient: {0}")]
    ForeignElement(String),

    #[error("enumeration cap exceeded: {0} elements")]
    EnumerationCap(u128),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unique-representation condition fails: {0}")]
    ConditionFails(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("safety bound of {0} transform steps exceeded")]
    SafetyBound(usize),

    #[error("instance count {count} exceeds the exhaustive ceiling {ceiling}")]
    Ceiling { count: u128, ceiling: u128 },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
