//! Brute-force ground truth, independent of the generating tree.
//!
//! Skolem sequences are found as partitions of `{1, ..., 2n}` into pairs
//! `(a, a + r)`, one for each `r`, placed largest `r` first.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::OracleError;
use crate::sequence::SkolemSequence;

pub const MAX_ORACLE_ORDER: usize = 6;

pub fn oracle_enumerate(order: usize) -> Result<BTreeSet<SkolemSequence>, OracleError> {
    if !(1..=MAX_ORACLE_ORDER).contains(&order) {
        return Err(OracleError::OrderOutOfRange {
            order,
            max: MAX_ORACLE_ORDER,
        });
    }
    let mut slots = vec![0u32; 2 * order];
    let mut found = BTreeSet::new();
    place(order as u32, &mut slots, &mut found);
    Ok(found)
}

fn place(r: u32, slots: &mut [u32], found: &mut BTreeSet<SkolemSequence>) {
    if r == 0 {
        found.insert(SkolemSequence::new(slots.to_vec()).expect("complete pairing"));
        return;
    }
    let r_us = r as usize;
    for a in 0..slots.len() - r_us {
        if slots[a] == 0 && slots[a + r_us] == 0 {
            slots[a] = r;
            slots[a + r_us] = r;
            place(r - 1, slots, found);
            slots[a] = 0;
            slots[a + r_us] = 0;
        }
    }
}

/// True iff the positions holding each value `r` form a pair `(a, a + r)`
/// and these pairs partition `{1, ..., 2n}` for `r = 1..=n`.
pub fn oracle_validate(values: &[i64]) -> bool {
    let mut positions: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, &v) in values.iter().enumerate() {
        positions.entry(v).or_default().push(i + 1);
    }
    let n = positions.len();
    if n == 0 || values.len() != 2 * n {
        return false;
    }
    positions.iter().zip(1..).all(|((&r, pos), expected)| {
        r == expected && pos.len() == 2 && (pos[1] - pos[0]) as i64 == r
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::validate_skolem;

    #[test]
    fn small_orders() {
        let one = oracle_enumerate(1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.iter().next().unwrap().values(), &[1, 1]);
        assert!(oracle_enumerate(2).unwrap().is_empty());
        assert!(oracle_enumerate(3).unwrap().is_empty());
        let four = oracle_enumerate(4).unwrap();
        assert_eq!(four.len(), 6);
        assert!(four.contains(&"3,4,2,3,2,4,1,1".parse().unwrap()));
        assert_eq!(oracle_enumerate(5).unwrap().len(), 10);
    }

    #[test]
    fn policy_limit() {
        assert!(oracle_enumerate(0).is_err());
        assert!(oracle_enumerate(7).is_err());
        assert!(oracle_enumerate(6).unwrap().is_empty());
    }

    #[test]
    fn validate_examples() {
        assert!(oracle_validate(&[3, 4, 2, 3, 2, 4, 1, 1]));
        assert!(!oracle_validate(&[1, 1, 1, 1]));
        assert!(!oracle_validate(&[]));
        assert!(!oracle_validate(&[2, 2]));
        assert!(!oracle_validate(&[1, 1, 2, 2]));
    }

    #[test]
    fn members_pass_both_recognizers() {
        for n in 1..=5 {
            for w in oracle_enumerate(n).unwrap() {
                let wide: Vec<i64> = w.values().iter().map(|&v| v.into()).collect();
                assert!(validate_skolem(&wide));
                assert!(oracle_validate(&wide));
            }
        }
    }
}
