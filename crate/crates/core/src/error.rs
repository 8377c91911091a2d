use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::field::Scalar;

pub type Result<T> = core::result::Result<T, Error>;

/// Counterexample `(x, y, λ)` to the two-map condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairWitness {
    pub x: Vec<Scalar>,
    pub y: Vec<Scalar>,
    pub lambda: Scalar,
}

/// Which hypothesis of the quotient-map extraction was not met.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Refusal {
    #[error("P is not homogeneous")]
    NotHomogeneous,
    #[error("deg(P) = {degree} is not below |F| = {order}")]
    DegreeNotBelowFieldOrder { degree: u32, order: u64 },
    #[error("dimension condition fails: dim L_P + dim rad = {lp} + {rad} != {n}")]
    DimensionCondition { lp: usize, rad: usize, n: usize },
    #[error("the pair does not satisfy P(x + λy) = P(φ(x) + λψ(y))")]
    PairFails(Option<alloc::boxed::Box<PairWitness>>),
    #[error("the pair condition was only checked by sampling")]
    PairUnverified,
    #[error("radical computation was inconclusive")]
    RadicalInconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("cannot enumerate an infinite field")]
    InfiniteEnumeration,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("input vectors are linearly dependent")]
    RankDeficient,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("variable x{index} is out of range (nvars = {nvars})")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("value {0} is not an element of the field")]
    NotInField(String),
    #[error("degree/field mismatch: deg(P) = {degree} is not below |F| = {order}")]
    DegreeFieldMismatch { degree: u32, order: u64 },
    #[error("enumeration needs {needed} evaluations, cap is {cap}")]
    CapExceeded { needed: u128, cap: u128 },
    #[error("undecidable: {0}")]
    Undecidable(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error("index {index} out of range 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("map form mismatch: {0}")]
    FormMismatch(String),
    #[error("linearity check failed: {0}")]
    LinearityFailed(String),
    #[error("refused: {0}")]
    Refused(Refusal),
}
