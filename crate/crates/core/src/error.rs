use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in Q(zeta_{l})")]
    DivisionByZero { l: u32 },

    #[error("invalid root of unity order l = {l}: {reason}")]
    InvalidOrder { l: i64, reason: &'static str },

    #[error("operands live in different fields (l = {left} and l = {right})")]
    FieldMismatch { left: u32, right: u32 },

    #[error("invalid root datum {label}{rank}: {reason}")]
    InvalidRootDatum {
        label: String,
        rank: usize,
        reason: &'static str,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("l = {l} is not admissible: {reason}")]
    Inadmissible { l: u32, reason: String },

    #[error("enumeration budget exceeded: {needed} points requested, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("index {index} out of range 0..{bound}")]
    OutOfRange { index: usize, bound: usize },

    #[error("{what}: solution space has dimension {dim}, expected 1")]
    NotOneDimensional { what: &'static str, dim: usize },

    #[error("output failed: {0}")]
    Output(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
