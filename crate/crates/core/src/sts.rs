//! Steiner triple systems of order `6n + 1` from a Skolem sequence.
//!
//! Each pair `s_i = s_j = k` with `i < j` gives a base block
//! `(x, x + k, x + j + n)`; translating every base block by `0..v` modulo
//! `v = 6n + 1` develops the full system.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::sequence::SkolemSequence;

pub type Triple = [u64; 3];

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StsError {
    #[error("offset x={x} outside 0..{v}")]
    OffsetOutOfRange { x: u64, v: u64 },
    #[error("missing `v=<points>` header")]
    MissingHeader,
    #[error("line {line}: {reason}")]
    BadLine { line: usize, reason: String },
}

/// A point count and its blocks. Points are residues `0..v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleSystem {
    pub v: u64,
    pub blocks: Vec<Triple>,
}

/// Base blocks in order of the first occurrence of each value.
pub fn base_blocks(w: &SkolemSequence, x: u64) -> Result<Vec<Triple>, StsError> {
    let n = w.order() as u64;
    let v = 6 * n + 1;
    if x >= v {
        return Err(StsError::OffsetOutOfRange { x, v });
    }
    let values = w.values();
    Ok(values
        .iter()
        .enumerate()
        .filter_map(|(i, &k)| {
            let j = i + k as usize;
            // the first occurrence of k is the one whose partner lies k to the right
            (j < values.len() && values[j] == k).then(|| {
                let k = u64::from(k);
                [x, x + k, x + (j as u64 + 1) + n]
            })
        })
        .collect())
}

/// Translates every base block by `t = 0..v` modulo `v = 6n + 1`.
/// Repeated blocks are kept, so a bad base shows up in [`verify_sts`].
pub fn develop_sts(base: &[Triple], n: usize) -> TripleSystem {
    let v = 6 * n as u64 + 1;
    let mut blocks = Vec::with_capacity(base.len() * v as usize);
    for block in base {
        for t in 0..v {
            let mut b = block.map(|p| (p + t) % v);
            b.sort_unstable();
            blocks.push(b);
        }
    }
    TripleSystem { v, blocks }
}

/// Number of blocks containing each unordered pair, indexed as `a * v + b`
/// with `a < b`. `None` if a block is malformed.
pub fn pair_counts(system: &TripleSystem) -> Option<Vec<u32>> {
    let v = usize::try_from(system.v).ok()?;
    let mut counts = vec![0u32; v * v];
    for block in &system.blocks {
        let mut b = *block;
        b.sort_unstable();
        if b[0] == b[1] || b[1] == b[2] || b[2] >= system.v {
            return None;
        }
        let [p, q, r] = b.map(|x| x as usize);
        counts[p * v + q] += 1;
        counts[p * v + r] += 1;
        counts[q * v + r] += 1;
    }
    Some(counts)
}

/// True iff every pair of points lies in exactly one block and there are
/// `v(v - 1) / 6` blocks.
pub fn verify_sts(system: &TripleSystem) -> bool {
    let v = system.v;
    if v == 0 || (system.blocks.len() as u64) * 6 != v * (v - 1) {
        return false;
    }
    let Some(counts) = pair_counts(system) else {
        return false;
    };
    let v = v as usize;
    (0..v).all(|a| (a + 1..v).all(|b| counts[a * v + b] == 1))
}

impl fmt::Display for TripleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "v={}", self.v)?;
        for [a, b, c] in &self.blocks {
            writeln!(f, "{a} {b} {c}")?;
        }
        Ok(())
    }
}

impl FromStr for TripleSystem {
    type Err = StsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(StsError::MissingHeader)?;
        let v = header
            .trim()
            .strip_prefix("v=")
            .and_then(|d| d.parse().ok())
            .ok_or(StsError::MissingHeader)?;
        let blocks = lines
            .map(|(idx, line)| {
                let bad = |reason: &str| StsError::BadLine {
                    line: idx + 1,
                    reason: reason.to_string(),
                };
                let points = line
                    .split_whitespace()
                    .map(|t| t.parse::<u64>().map_err(|_| bad("not an integer")))
                    .collect::<Result<Vec<_>, _>>()?;
                <Triple>::try_from(points).map_err(|_| bad("expected three points"))
            })
            .collect::<Result<_, _>>()?;
        Ok(TripleSystem { v, blocks })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> SkolemSequence {
        text.parse().unwrap()
    }

    #[test]
    fn base_blocks_order_four() {
        let blocks = base_blocks(&w("3,4,2,3,2,4,1,1"), 0).unwrap();
        assert_eq!(blocks, vec![[0, 3, 8], [0, 4, 10], [0, 2, 9], [0, 1, 12]]);
        let shifted = base_blocks(&w("3,4,2,3,2,4,1,1"), 1).unwrap();
        let expected: Vec<Triple> = blocks.iter().map(|b| b.map(|p| p + 1)).collect();
        assert_eq!(shifted, expected);
    }

    #[test]
    fn base_blocks_order_one() {
        assert_eq!(base_blocks(&w("1,1"), 0).unwrap(), vec![[0, 1, 3]]);
        assert_eq!(
            base_blocks(&w("1,1"), 7),
            Err(StsError::OffsetOutOfRange { x: 7, v: 7 })
        );
    }

    #[test]
    fn fano_plane() {
        let sys = develop_sts(&[[0, 1, 3]], 1);
        assert_eq!(sys.v, 7);
        assert_eq!(sys.blocks.len(), 7);
        assert!(verify_sts(&sys));
    }

    #[test]
    fn sts_25() {
        let base = base_blocks(&w("3,4,2,3,2,4,1,1"), 0).unwrap();
        let sys = develop_sts(&base, 4);
        assert_eq!(sys.v, 25);
        assert_eq!(sys.blocks.len(), 100);
        assert!(verify_sts(&sys));
        let mut broken = sys.clone();
        broken.blocks.pop();
        assert!(!verify_sts(&broken));
    }

    #[test]
    fn degenerate_and_malformed() {
        let empty = develop_sts(&[], 0);
        assert_eq!(empty.v, 1);
        assert!(empty.blocks.is_empty());
        let bad = TripleSystem { v: 7, blocks: vec![[0, 0, 1]; 7] };
        assert!(!verify_sts(&bad));
        // right block count, one pair covered twice
        let mut twice = develop_sts(&[[0, 1, 3]], 1);
        twice.blocks[0] = twice.blocks[1];
        assert!(!verify_sts(&twice));
    }

    #[test]
    fn text_round_trip() {
        let sys = develop_sts(&[[0, 1, 3]], 1);
        let text = sys.to_string();
        assert!(text.starts_with("v=7\n0 1 3\n"));
        assert_eq!(text.parse::<TripleSystem>().unwrap(), sys);
        assert_eq!("".parse::<TripleSystem>(), Err(StsError::MissingHeader));
        assert!(matches!("v=7\n1 2".parse::<TripleSystem>(), Err(StsError::BadLine { line: 2, .. })));
    }
}
