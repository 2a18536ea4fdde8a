//! Exhaustive generation of Skolem sequences.
//!
//! Skolem sequences of order `n` are grown one vertex at a time as open arc
//! diagrams. Each node of the generating tree carries the decorated sequence
//! and the set of arc lengths already used; the succession rule adds either
//! a new open arc or closes an open arc whose length is still free.
//!
//! Also included: an independent backtracking oracle, and the construction of
//! Steiner triple systems of order `6n + 1` from a Skolem sequence.

pub mod engine;
pub mod error;
pub mod oracle;
pub mod sequence;
pub mod sts;
mod succession;

pub use engine::{
    count_open_levels, dfs_enumerate, enumerate_skolem, parallel_count, parallel_enumerate,
    prune_feasible, CompactState, EnumerationReport, SearchError, SearchOptions,
};
pub use error::{EngineError, OracleError, ParseSkolemError, SkolemViolation, StateError};
pub use sequence::{check_skolem, state_from_sequence, validate_skolem, Entry, OpenState, SkolemSequence};
pub use sts::{base_blocks, develop_sts, verify_sts, Triple, TripleSystem};
