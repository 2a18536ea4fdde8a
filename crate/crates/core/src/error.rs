use thiserror::Error;

/// Why a decorated sequence is not an open Skolem sequence.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("token {position} is not `k` or `*k`: {token:?}")]
    InvalidToken { position: usize, token: String },
    #[error("zero value at position {position}")]
    ZeroValue { position: usize },
    #[error("duplicate star value *{value} at position {position}")]
    DuplicateStar { value: u32, position: usize },
    #[error("star value *{value} at position {position} should be *{expected}")]
    StarPosition { value: u32, position: usize, expected: u32 },
    #[error("value {value} at positions {first} and {second}: gap {} != {value}", second - first)]
    Gap { value: u32, first: usize, second: usize },
    #[error("value {value} seen more than twice (position {position})")]
    TooManyOccurrences { value: u32, position: usize },
    #[error("value {value} at position {position} has no partner")]
    Unpaired { value: u32, position: usize },
}

/// Why an integer sequence is not a Skolem sequence.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SkolemViolation {
    #[error("empty sequence")]
    Empty,
    #[error("odd length {len}")]
    OddLength { len: usize },
    #[error("value {value} at position {position} outside 1..=n")]
    OutOfRange { value: i64, position: usize },
    #[error("value {value} appears more than twice")]
    Multiplicity { value: u32 },
    #[error("value {value} at positions {first} and {second}: gap {} != {value}", second - first)]
    Gap { value: u32, first: usize, second: usize },
    #[error("open entry at position {position}")]
    OpenEntry { position: usize },
}

impl SkolemViolation {
    /// Short machine-friendly reason, used in verification verdicts.
    pub fn tag(&self) -> &'static str {
        match self {
            SkolemViolation::Empty => "empty",
            SkolemViolation::OddLength { .. } => "length",
            SkolemViolation::OutOfRange { .. } => "range",
            SkolemViolation::Multiplicity { .. } => "count",
            SkolemViolation::Gap { .. } => "gap",
            SkolemViolation::OpenEntry { .. } => "open",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseSkolemError {
    #[error(transparent)]
    Syntax(#[from] StateError),
    #[error(transparent)]
    Invalid(#[from] SkolemViolation),
}

impl ParseSkolemError {
    pub fn tag(&self) -> &'static str {
        match self {
            ParseSkolemError::Syntax(_) => "syntax",
            ParseSkolemError::Invalid(v) => v.tag(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("node budget of {budget} exhausted after {completed} complete levels", completed = .completed.len())]
    Exhausted { budget: u64, completed: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle order {order} outside 1..={max}")]
    OrderOutOfRange { order: usize, max: usize },
}
