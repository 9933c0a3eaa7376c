use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at s = {at}")]
    Pole { at: String },

    #[error("denominator has zero constant term; not a formal power series in t")]
    NotPowerSeries,

    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("C_k is defined for k >= 1 (got k = {0})")]
    InvalidCoefficientIndex(usize),

    #[error("column {column} is outside the trusted range 0..={valid} of this operator")]
    OutsideValidRange { column: usize, valid: isize },

    #[error("cutoff M = {cutoff} cannot resolve window J = {window}; increase the cutoff to at least {needed}")]
    InsufficientCutoff {
        cutoff: usize,
        window: usize,
        needed: usize,
    },

    #[error("operator is not a finite sum of graded shifts on the window: {0}")]
    NotInImage(String),

    #[error("entry ({j}, {k}) lies outside the window J = {window}")]
    OutsideWindow { j: u32, k: u32, window: u32 },

    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("negative exponent at {pos} on a non-scalar factor")]
    NegativeExponent { pos: usize },

    #[error("expected a scalar expression: {0}")]
    NotScalar(String),

    #[error("unknown verification suite '{0}'")]
    UnknownSuite(String),
}
