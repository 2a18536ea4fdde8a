//! Output records and their line formats.

use std::fmt;

use serde::{Deserialize, Serialize};
use skolemgen::{OpenState, SkolemSequence, TripleSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecordKind {
    Skolem,
    OpenState,
    Count,
    Sts,
}

/// A record as printed by the CLI. `payload` is the canonical text form and
/// re-parses to an equal object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputRecord {
    pub kind: RecordKind,
    pub payload: String,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Skolem(SkolemSequence),
    OpenState(OpenState),
    Count(u64),
    Sts(TripleSystem),
}

impl OutputRecord {
    pub fn skolem(w: &SkolemSequence) -> Self {
        OutputRecord {
            kind: RecordKind::Skolem,
            payload: w.to_string(),
            order: w.order(),
        }
    }

    pub fn open_state(s: &OpenState) -> Self {
        OutputRecord {
            kind: RecordKind::OpenState,
            payload: s.to_string(),
            order: s.order(),
        }
    }

    /// `n=<n> count=<c>`
    pub fn count(order: usize, count: u64) -> Self {
        OutputRecord {
            kind: RecordKind::Count,
            payload: count.to_string(),
            order,
        }
    }

    pub fn sts(system: &TripleSystem, order: usize) -> Self {
        OutputRecord {
            kind: RecordKind::Sts,
            payload: system.to_string(),
            order,
        }
    }

    pub fn reparse(&self) -> Result<Parsed, String> {
        match self.kind {
            RecordKind::Skolem => self.payload.parse().map(Parsed::Skolem).map_err(|e| e.to_string()),
            RecordKind::OpenState => self
                .payload
                .parse()
                .map(Parsed::OpenState)
                .map_err(|e: skolemgen::StateError| e.to_string()),
            RecordKind::Count => self.payload.parse().map(Parsed::Count).map_err(|e| format!("{e}")),
            RecordKind::Sts => self.payload.parse().map(Parsed::Sts).map_err(|e| e.to_string()),
        }
    }
}

impl fmt::Display for OutputRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RecordKind::Count => write!(f, "n={} count={}", self.order, self.payload),
            _ => f.write_str(&self.payload),
        }
    }
}

/// One NDJSON line: `{"order":N,"values":[...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkolemLine {
    pub order: usize,
    pub values: Vec<u32>,
}

impl From<&SkolemSequence> for SkolemLine {
    fn from(w: &SkolemSequence) -> Self {
        SkolemLine {
            order: w.order(),
            values: w.values().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_round_trip() {
        let w: SkolemSequence = "3,4,2,3,2,4,1,1".parse().unwrap();
        let rec = OutputRecord::skolem(&w);
        assert_eq!(rec.reparse(), Ok(Parsed::Skolem(w.clone())));
        let s: OpenState = "*7,4,1,1,*3,4,*1".parse().unwrap();
        assert_eq!(OutputRecord::open_state(&s).reparse(), Ok(Parsed::OpenState(s)));
        let c = OutputRecord::count(10, 4176);
        assert_eq!(c.to_string(), "n=10 count=4176");
        assert_eq!(c.reparse(), Ok(Parsed::Count(4176)));
        let sys = skolemgen::develop_sts(&[[0, 1, 3]], 1);
        assert_eq!(OutputRecord::sts(&sys, 1).reparse(), Ok(Parsed::Sts(sys)));
    }

    #[test]
    fn ndjson_shape() {
        let w: SkolemSequence = "1,1".parse().unwrap();
        let line = serde_json::to_string(&SkolemLine::from(&w)).unwrap();
        assert_eq!(line, r#"{"order":1,"values":[1,1]}"#);
        let back: SkolemLine = serde_json::from_str(&line).unwrap();
        assert_eq!(back.values, vec![1, 1]);
    }
}
