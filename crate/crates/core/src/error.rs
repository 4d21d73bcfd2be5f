use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("initial terms must not both be zero")]
    ZeroSequence,

    #[error("invalid range: lo {lo} exceeds hi {hi}")]
    InvalidRange { lo: i64, hi: i64 },

    #[error("wrong parameter arity for {identity}: expected {expected}, got {got}")]
    WrongArity {
        identity: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("parameter grid too large to enumerate")]
    GridTooLarge,

    #[error("degenerate factor: shifts k = {k}, s = {s} must both be nonzero")]
    DegenerateFactor { k: i64, s: i64 },

    #[error("denominator polynomial has a zero constant term")]
    ZeroConstantTerm,

    #[error("singular denominator at weight {weight}")]
    SingularDenominator { weight: String },

    #[error("oracle does not satisfy the recurrence at index {index}")]
    OracleMismatch { index: i64 },

    #[error("invalid recurrence descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("variant {given} out of range 1..={max}")]
    InvalidVariant { given: u8, max: u8 },
}
