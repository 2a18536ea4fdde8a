//! Decorated sequences: plain Skolem sequences and open Skolem sequences.
//!
//! An open Skolem sequence of order `n` is a row of `n` vertices. A closed
//! entry `k` is one endpoint of an arc of length `k`; its partner sits exactly
//! `k` positions away. An open entry `*k` is the left endpoint of an arc that
//! has not been closed yet, and `k` is the shortest length it can still get,
//! which always equals `(n + 1) - i` for the vertex at position `i`.
//!
//! Text form is a comma separated list of `k` or `*k` tokens.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{SkolemViolation, StateError};

/// One element of a decorated sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Entry {
    /// Endpoint of a closed arc; the value is the arc length.
    Closed(u32),
    /// Left endpoint of an open arc; the value is its star value.
    Open(u32),
}

impl Entry {
    pub fn value(self) -> u32 {
        match self {
            Entry::Closed(k) | Entry::Open(k) => k,
        }
    }

    pub fn is_open(self) -> bool {
        matches!(self, Entry::Open(_))
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Closed(k) => write!(f, "{k}"),
            Entry::Open(k) => write!(f, "*{k}"),
        }
    }
}

/// A node of the generating tree: an open Skolem sequence together with the
/// set of arc lengths already used by its closed arcs.
///
/// Values of this type always satisfy the open Skolem invariants; the only
/// ways to build one are [`OpenState::empty`], [`OpenState::from_entries`]
/// (which checks them) and the succession rule itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpenState {
    pub(crate) entries: Vec<Entry>,
    pub(crate) used: BTreeSet<u32>,
}

impl Default for OpenState {
    fn default() -> Self {
        Self::empty()
    }
}

impl OpenState {
    /// The root of the generating tree: `()` with `S = {}`.
    pub fn empty() -> Self {
        OpenState {
            entries: Vec::new(),
            used: BTreeSet::new(),
        }
    }

    /// Builds a state from its entries, deriving the label set and checking
    /// every invariant. The error names the first violation found scanning
    /// left to right.
    pub fn from_entries(entries: Vec<Entry>) -> Result<Self, StateError> {
        let n = entries.len();
        let mut first_seen: Vec<(u32, usize, u8)> = Vec::new();
        let mut stars = BTreeSet::new();
        for (idx, entry) in entries.iter().enumerate() {
            let position = idx + 1;
            match *entry {
                Entry::Open(0) | Entry::Closed(0) => {
                    return Err(StateError::ZeroValue { position })
                }
                Entry::Open(k) => {
                    if !stars.insert(k) {
                        return Err(StateError::DuplicateStar { value: k, position });
                    }
                    let expected = (n + 1 - position) as u32;
                    if k != expected {
                        return Err(StateError::StarPosition {
                            value: k,
                            position,
                            expected,
                        });
                    }
                }
                Entry::Closed(k) => {
                    match first_seen.iter_mut().find(|(v, _, _)| *v == k) {
                        None => first_seen.push((k, position, 1)),
                        Some((_, first, seen)) => {
                            if *seen >= 2 {
                                return Err(StateError::TooManyOccurrences { value: k, position });
                            }
                            if position - *first != k as usize {
                                return Err(StateError::Gap {
                                    value: k,
                                    first: *first,
                                    second: position,
                                });
                            }
                            *seen += 1;
                        }
                    }
                }
            }
        }
        if let Some(&(value, position, _)) = first_seen.iter().find(|(_, _, seen)| *seen == 1) {
            return Err(StateError::Unpaired { value, position });
        }
        let used = first_seen.into_iter().map(|(v, _, _)| v).collect();
        Ok(OpenState { entries, used })
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// The label set `S`.
    pub fn used(&self) -> &BTreeSet<u32> {
        &self.used
    }

    /// Number of vertices in the diagram.
    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn open_count(&self) -> usize {
        self.entries.iter().filter(|e| e.is_open()).count()
    }

    /// Star values in increasing order.
    pub fn star_values(&self) -> Vec<u32> {
        let mut stars: Vec<u32> = self
            .entries
            .iter()
            .filter_map(|e| match e {
                Entry::Open(k) => Some(*k),
                Entry::Closed(_) => None,
            })
            .collect();
        stars.sort_unstable();
        stars
    }

    /// The plain values when no arc is open.
    pub fn closed_values(&self) -> Option<Vec<u32>> {
        self.entries
            .iter()
            .map(|e| match e {
                Entry::Closed(k) => Some(*k),
                Entry::Open(_) => None,
            })
            .collect()
    }

    /// Converts a completed state into a Skolem sequence, if it is one.
    pub fn to_skolem(&self) -> Option<SkolemSequence> {
        self.closed_values().and_then(|v| SkolemSequence::new(v).ok())
    }
}

impl fmt::Display for OpenState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.entries)
    }
}

impl FromStr for OpenState {
    type Err = StateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OpenState::from_entries(parse_entries(s)?)
    }
}

/// Parses `state_from_sequence` text: plain and starred tokens.
pub fn state_from_sequence(text: &str) -> Result<OpenState, StateError> {
    text.parse()
}

/// Tokenizes the comma grammar without checking any arc invariant.
/// Whitespace around tokens is ignored; blank input is the empty sequence.
pub fn parse_entries(text: &str) -> Result<Vec<Entry>, StateError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .enumerate()
        .map(|(idx, raw)| {
            let token = raw.trim();
            let bad = || StateError::InvalidToken {
                position: idx + 1,
                token: token.to_string(),
            };
            let (open, digits) = match token.strip_prefix('*') {
                Some(rest) => (true, rest),
                None => (false, token),
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let k: u32 = digits.parse().map_err(|_| bad())?;
            if k == 0 {
                return Err(StateError::ZeroValue { position: idx + 1 });
            }
            Ok(if open { Entry::Open(k) } else { Entry::Closed(k) })
        })
        .collect()
}

fn write_joined<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

/// A validated Skolem sequence of order `n` (length `2n`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkolemSequence {
    values: Vec<u32>,
}

impl SkolemSequence {
    pub fn new(values: Vec<u32>) -> Result<Self, SkolemViolation> {
        let wide: Vec<i64> = values.iter().map(|&v| i64::from(v)).collect();
        check_skolem(&wide)?;
        Ok(SkolemSequence { values })
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }

    pub fn order(&self) -> usize {
        self.values.len() / 2
    }

    /// Positions `(i, j)`, 1-based with `i < j`, of the pair with value `k`.
    pub fn pair(&self, k: u32) -> Option<(usize, usize)> {
        let mut hits = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == k)
            .map(|(i, _)| i + 1);
        Some((hits.next()?, hits.next()?))
    }

    /// Reversal preserves every gap, so the result is again a Skolem sequence.
    pub fn reverse(&self) -> SkolemSequence {
        let mut values = self.values.clone();
        values.reverse();
        SkolemSequence { values }
    }

    pub fn to_state(&self) -> OpenState {
        OpenState {
            entries: self.values.iter().map(|&v| Entry::Closed(v)).collect(),
            used: self.values.iter().copied().collect(),
        }
    }
}

impl fmt::Display for SkolemSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.values)
    }
}

impl FromStr for SkolemSequence {
    type Err = crate::error::ParseSkolemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let entries = parse_entries(s)?;
        let values = entries
            .iter()
            .enumerate()
            .map(|(i, e)| match e {
                Entry::Closed(k) => Ok(*k),
                Entry::Open(_) => Err(SkolemViolation::OpenEntry { position: i + 1 }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SkolemSequence::new(values)?)
    }
}

/// Checks both defining conditions on an arbitrary integer sequence.
pub fn check_skolem(values: &[i64]) -> Result<(), SkolemViolation> {
    if values.is_empty() {
        return Err(SkolemViolation::Empty);
    }
    if !values.len().is_multiple_of(2) {
        return Err(SkolemViolation::OddLength { len: values.len() });
    }
    let n = values.len() / 2;
    // first occurrence position (1-based) and count, indexed by value
    let mut seen = vec![(0usize, 0u8); n + 1];
    for (idx, &v) in values.iter().enumerate() {
        if v < 1 || v > n as i64 {
            return Err(SkolemViolation::OutOfRange {
                value: v,
                position: idx + 1,
            });
        }
        let slot = &mut seen[v as usize];
        slot.1 += 1;
        match slot.1 {
            1 => slot.0 = idx + 1,
            2 => {
                if idx + 1 - slot.0 != v as usize {
                    return Err(SkolemViolation::Gap {
                        value: v as u32,
                        first: slot.0,
                        second: idx + 1,
                    });
                }
            }
            _ => return Err(SkolemViolation::Multiplicity { value: v as u32 }),
        }
    }
    // length 2n with every value in 1..=n seen at most twice forces exactly twice
    Ok(())
}

pub fn validate_skolem(values: &[i64]) -> bool {
    check_skolem(values).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        assert!(validate_skolem(&[3, 4, 2, 3, 2, 4, 1, 1]));
        assert!(validate_skolem(&[4, 2, 3, 2, 4, 3, 1, 1]));
        assert!(!validate_skolem(&[1, 1, 2, 2]));
        assert!(validate_skolem(&[1, 1]));
    }

    #[test]
    fn validate_malformed() {
        assert_eq!(check_skolem(&[]), Err(SkolemViolation::Empty));
        assert_eq!(check_skolem(&[1, 1, 1]), Err(SkolemViolation::OddLength { len: 3 }));
        assert!(matches!(check_skolem(&[0, 0]), Err(SkolemViolation::OutOfRange { .. })));
        assert!(matches!(check_skolem(&[-1, -1]), Err(SkolemViolation::OutOfRange { .. })));
        assert_eq!(check_skolem(&[1, 1, 1, 1]), Err(SkolemViolation::Multiplicity { value: 1 }));
        assert_eq!(
            check_skolem(&[1, 1, 2, 2]),
            Err(SkolemViolation::Gap { value: 2, first: 3, second: 4 })
        );
    }

    #[test]
    fn parse_open_example() {
        let s: OpenState = "*7,4,1,1,*3,4,*1".parse().unwrap();
        assert_eq!(s.order(), 7);
        assert_eq!(s.used().iter().copied().collect::<Vec<_>>(), vec![1, 4]);
        assert_eq!(s.star_values(), vec![1, 3, 7]);
        assert_eq!(s.to_string(), "*7,4,1,1,*3,4,*1");
    }

    #[test]
    fn parse_plain_pair() {
        let s = state_from_sequence("1,1").unwrap();
        assert_eq!(s.entries(), &[Entry::Closed(1), Entry::Closed(1)]);
        assert!(s.used().contains(&1));
    }

    #[test]
    fn parse_diagnostics() {
        assert_eq!(
            state_from_sequence("3,3"),
            Err(StateError::Gap { value: 3, first: 1, second: 2 })
        );
        assert_eq!(
            state_from_sequence("1,1,1"),
            Err(StateError::TooManyOccurrences { value: 1, position: 3 })
        );
        assert_eq!(
            state_from_sequence("*2,*2"),
            Err(StateError::DuplicateStar { value: 2, position: 2 })
        );
        assert_eq!(
            state_from_sequence("*1,*1"),
            Err(StateError::StarPosition { value: 1, position: 1, expected: 2 })
        );
        assert_eq!(
            state_from_sequence("2,*1"),
            Err(StateError::Unpaired { value: 2, position: 1 })
        );
        assert!(matches!(state_from_sequence("1,x"), Err(StateError::InvalidToken { position: 2, .. })));
        assert!(matches!(state_from_sequence("*"), Err(StateError::InvalidToken { .. })));
        assert_eq!(state_from_sequence("*0"), Err(StateError::ZeroValue { position: 1 }));
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = state_from_sequence(" *3 , 1,1 ").unwrap();
        assert_eq!(a.to_string(), "*3,1,1");
        assert_eq!(state_from_sequence("").unwrap(), OpenState::empty());
    }

    #[test]
    fn reverse_examples() {
        let w: SkolemSequence = "3,4,2,3,2,4,1,1".parse().unwrap();
        assert_eq!(w.reverse().values(), &[1, 1, 4, 2, 3, 2, 4, 3]);
        assert_eq!(w.reverse().reverse(), w);
        let one: SkolemSequence = "1,1".parse().unwrap();
        assert_eq!(one.reverse(), one);
    }

    #[test]
    fn skolem_rejects_stars() {
        assert!("*1".parse::<SkolemSequence>().is_err());
        assert!("2,1,1".parse::<SkolemSequence>().is_err());
    }

    #[test]
    fn pair_positions() {
        let w: SkolemSequence = "3,4,2,3,2,4,1,1".parse().unwrap();
        assert_eq!(w.pair(3), Some((1, 4)));
        assert_eq!(w.pair(1), Some((7, 8)));
        assert_eq!(w.pair(5), None);
    }
}
