use thiserror::Error;

/// Errors raised by field construction, Boolean-function operations and the
/// bent/near-bent constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {m} is out of range [{min}, {max}]")]
    DimensionOutOfRange { m: u32, min: u32, max: u32 },

    #[error("polynomial {poly:#x} is not a primitive polynomial of degree {m} over F_2")]
    NonPrimitivePolynomial { poly: u64, m: u32 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("expected an even dimension, got {0}")]
    OddDimension(u32),

    #[error("function is not near-bent (spectrum histogram {histogram})")]
    NotNearBent { histogram: String },

    #[error("function is not bent (spectrum histogram {histogram})")]
    NotBent { histogram: String },

    #[error("the derivative D_1 is not a constant function")]
    DerivativeNotConstant,

    #[error("condition (T) does not hold: f0+f1 is at Hamming distance {distance} from tr / tr+1")]
    ConditionTNotMet { distance: u64 },

    #[error("condition (T) holds with xi=1 but this check needs f0+f1 = tr")]
    ConditionTWrongConstant,

    #[error("parameter condition violated: {0}")]
    ConditionViolation(String),

    #[error("constructed function failed bent verification")]
    BentVerificationFailed,

    #[error("invalid exponent set: {0}")]
    InvalidExponentSet(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("exponent out of range at position {pos}")]
    ExponentOutOfRange { pos: usize },

    #[error("Mattson-Solomon coefficients violate Frobenius conjugacy at exponent {exponent}")]
    NotBooleanConsistent { exponent: u32 },

    #[error("invalid truth table: {0}")]
    InvalidTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
