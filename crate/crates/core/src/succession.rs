//! The succession rule of the generating tree over open Skolem sequences.
//!
//! A node of order `n` has children of order `n + 1`:
//!
//! 1. the opener child: every star value grows by one and `*1` is appended;
//! 2. one closer child per open entry `*j` with `j` not yet in `S`: that entry
//!    becomes the closed value `j`, a partner `j` is appended, the other star
//!    values grow by one and `j` joins `S`.
//!
//! Children are listed opener first, then closers by increasing `j`.

use crate::sequence::{Entry, OpenState};

impl OpenState {
    pub fn add_opener(&self) -> OpenState {
        let mut entries: Vec<Entry> = self.entries.iter().map(|e| bump(*e)).collect();
        entries.push(Entry::Open(1));
        OpenState {
            entries,
            used: self.used.clone(),
        }
    }

    pub fn add_closers(&self) -> Vec<OpenState> {
        // star values decrease left to right, so walk right to left
        self.entries
            .iter()
            .enumerate()
            .rev()
            .filter_map(|(pos, e)| match *e {
                Entry::Open(j) if !self.used.contains(&j) => Some(self.close_at(pos, j)),
                _ => None,
            })
            .collect()
    }

    fn close_at(&self, pos: usize, j: u32) -> OpenState {
        let mut entries: Vec<Entry> = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| if i == pos { Entry::Closed(j) } else { bump(*e) })
            .collect();
        entries.push(Entry::Closed(j));
        let mut used = self.used.clone();
        used.insert(j);
        OpenState { entries, used }
    }

    pub fn children(&self) -> Vec<OpenState> {
        let mut out = Vec::with_capacity(1 + self.open_count());
        out.push(self.add_opener());
        out.extend(self.add_closers());
        out
    }

    /// Recognizes a complete Skolem sequence from the labels alone:
    /// `2|S| = n` and `max(S) = |S|`, with the order-0 state excluded.
    pub fn is_skolem_label(&self) -> bool {
        let size = self.used.len();
        let max = self.used.last().copied().unwrap_or(0) as usize;
        self.order() > 0 && 2 * size == self.order() && max == size
    }

    /// Inverse of the succession rule: the unique node this one is a child of.
    /// `None` for the root.
    pub fn parent(&self) -> Option<OpenState> {
        let (&last, rest) = self.entries.split_last()?;
        let mut entries: Vec<Entry> = rest.iter().map(|e| unbump(*e)).collect();
        let mut used = self.used.clone();
        if let Entry::Closed(j) = last {
            let partner = rest.len().checked_sub(j as usize)?;
            entries[partner] = Entry::Open(j);
            used.remove(&j);
        }
        Some(OpenState { entries, used })
    }
}

fn bump(e: Entry) -> Entry {
    match e {
        Entry::Open(k) => Entry::Open(k + 1),
        closed => closed,
    }
}

fn unbump(e: Entry) -> Entry {
    match e {
        Entry::Open(k) => Entry::Open(k - 1),
        closed => closed,
    }
}
