use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("denominator has zero constant term")]
    ZeroConstantTerm,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("expected a rational value, found a non-rational cyclotomic number")]
    NonRational,
    #[error("expected an integral value, found {0}")]
    NonIntegral(String),
    #[error("character is not symmetric under z -> 1/z")]
    AsymmetricCharacter,
    #[error("non-exact division in symmetric power recurrence at degree {0}")]
    InexactDivision(usize),
    #[error("weight vector is not stable (all weights share a sign)")]
    Unstable,
    #[error("degree cap must be at least {min}, got {cap}")]
    CapTooSmall { cap: usize, min: usize },
    #[error("group order exceeds cap {0}")]
    GroupTooLarge(usize),
    #[error("module is not 1-large; use the table-backed route for R1, 2R1, R2")]
    NotOneLarge,
    #[error("no cyclic model order matched within bound {0}")]
    NoCyclicMatch(usize),
    #[error("several cyclic model orders matched: {0:?}")]
    AmbiguousCyclicMatch(Vec<usize>),
    #[error("{0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
