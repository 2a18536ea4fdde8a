//! Traversal of the generating tree.
//!
//! Counting works on [`CompactState`], which drops the entry sequence and
//! keeps only the star-value set, the label set and the order. Star values
//! pin down open positions (`k = (n + 1) - i`), so the subtree below a node
//! depends on nothing else.
//!
//! Enumeration walks the tree depth-first with an explicit stack and a single
//! mutable working sequence. Open entries are stored by position only; a
//! star value is recovered from the current length when needed, so appending
//! a vertex never rewrites earlier entries.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::EngineError;
use crate::sequence::{Entry, OpenState, SkolemSequence};

/// Largest order supported by the bitmask counting state.
pub const MAX_COUNT_ORDER: usize = 63;
/// Largest Skolem order supported by enumeration (depth `2N` must fit).
pub const MAX_ENUM_ORDER: usize = 31;
/// Visited nodes between progress lines.
pub const PROGRESS_INTERVAL: u64 = 10_000_000;

/// Generating-tree node reduced to what determines its subtree.
///
/// Bit `k` of `stars` is set when `*k` occurs; bit `k` of `used` when `k` is
/// in the label set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompactState {
    pub len: u32,
    pub stars: u64,
    pub used: u64,
}

impl CompactState {
    pub const ROOT: CompactState = CompactState {
        len: 0,
        stars: 0,
        used: 0,
    };

    /// `None` when a value does not fit the 64-bit masks.
    pub fn from_state(state: &OpenState) -> Option<Self> {
        let mut stars = 0u64;
        for k in state.star_values() {
            stars |= 1u64.checked_shl(k)?;
        }
        let mut used = 0u64;
        for &k in state.used() {
            used |= 1u64.checked_shl(k)?;
        }
        Some(CompactState {
            len: state.order() as u32,
            stars,
            used,
        })
    }

    pub fn open_count(self) -> u32 {
        self.stars.count_ones()
    }

    /// Star values that may be closed.
    pub fn closable(self) -> u64 {
        self.stars & !self.used
    }

    pub fn fan_out(self) -> u32 {
        1 + self.closable().count_ones()
    }

    pub fn opener(self) -> CompactState {
        CompactState {
            len: self.len + 1,
            stars: (self.stars << 1) | 0b10,
            used: self.used,
        }
    }

    pub fn closer(self, j: u32) -> CompactState {
        let bit = 1u64 << j;
        debug_assert!(self.closable() & bit != 0);
        CompactState {
            len: self.len + 1,
            stars: (self.stars & !bit) << 1,
            used: self.used | bit,
        }
    }

    /// Children in canonical order.
    pub fn children(self) -> impl Iterator<Item = CompactState> {
        std::iter::once(self.opener()).chain(bits(self.closable()).map(move |j| self.closer(j)))
    }

    /// Bitmask form of [`prune_feasible`].
    pub fn feasible(self, target_order: usize) -> bool {
        feasible_masks(self.len as usize, self.stars, self.used, target_order)
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let j = mask.trailing_zeros();
            mask &= mask - 1;
            Some(j)
        }
    })
}

fn low_mask(n: usize) -> u64 {
    // bits 1..=n
    if n >= 63 {
        !1u64
    } else {
        ((1u64 << (n + 1)) - 1) & !1
    }
}

fn feasible_masks(len: usize, stars: u64, used: u64, target: usize) -> bool {
    let depth = 2 * target;
    let open = stars.count_ones() as usize;
    let allowed = low_mask(target);
    if stars & !allowed != 0 || used & !allowed != 0 {
        return false;
    }
    if len + open > depth || !(depth - len - open).is_multiple_of(2) {
        return false;
    }
    // Hall's condition for matching each star k to a distinct free length >= k
    let free = allowed & !used;
    bits(stars).all(|k| (stars >> k).count_ones() <= (free >> k).count_ones())
}

/// Returns `false` only when no descendant of `state` at length `2N` is a
/// Skolem sequence of order `N`.
///
/// Checks, each sound on its own: every star value and every used length is
/// at most `N`; the open arcs can be matched to distinct unused lengths no
/// smaller than their star values; the vertices left after closing every
/// open arc come in opener/closer pairs.
pub fn prune_feasible(state: &OpenState, target_order: usize) -> bool {
    let n = target_order as u32;
    let stars = state.star_values();
    if stars.iter().chain(state.used()).any(|&k| k > n) {
        return false;
    }
    let depth = 2 * target_order;
    let (m, p) = (state.order(), stars.len());
    if m + p > depth || !(depth - m - p).is_multiple_of(2) {
        return false;
    }
    let mut free: Vec<u32> = (1..=n).filter(|k| !state.used().contains(k)).collect();
    for &k in stars.iter().rev() {
        match free.pop() {
            Some(len) if len >= k => {}
            _ => return false,
        }
    }
    true
}

fn check_count_order(max_order: usize) -> Result<(), EngineError> {
    if max_order == 0 {
        return Err(EngineError::ZeroOrder);
    }
    if max_order > MAX_COUNT_ORDER {
        return Err(EngineError::OrderTooLarge {
            order: max_order,
            max: MAX_COUNT_ORDER,
        });
    }
    Ok(())
}

fn check_enum_order(order: usize) -> Result<(), EngineError> {
    if order == 0 {
        return Err(EngineError::ZeroOrder);
    }
    if order > MAX_ENUM_ORDER {
        return Err(EngineError::OrderTooLarge {
            order,
            max: MAX_ENUM_ORDER,
        });
    }
    Ok(())
}

/// Adds per-level counts of `node`'s proper descendants into `counts`
/// (index `d - 1` holds level `d`).
fn count_below(node: CompactState, max_order: usize, counts: &mut [u64]) {
    let next = node.len as usize + 1;
    if next > max_order {
        return;
    }
    counts[next - 1] += u64::from(node.fan_out());
    if next == max_order {
        return;
    }
    for child in node.children() {
        count_below(child, max_order, counts);
    }
}

/// `|OS_n|` for `n = 1..=max_order`, depth-first, memory proportional to depth.
pub fn count_open_levels(max_order: usize) -> Result<Vec<u64>, EngineError> {
    check_count_order(max_order)?;
    let mut counts = vec![0u64; max_order];
    count_below(CompactState::ROOT, max_order, &mut counts);
    Ok(counts)
}

/// Iterative deepening: level `d` is reported to `on_level` as soon as a
/// depth-`d` pass completes. Stops with the completed prefix once more than
/// `node_budget` nodes have been visited in total.
pub fn count_open_levels_bounded<F>(
    max_order: usize,
    node_budget: u64,
    mut on_level: F,
) -> Result<Vec<u64>, EngineError>
where
    F: FnMut(usize, u64),
{
    check_count_order(max_order)?;
    let mut completed = Vec::with_capacity(max_order);
    let mut spent = 0u64;
    for depth in 1..=max_order {
        let mut counts = vec![0u64; depth];
        let mut remaining = node_budget.saturating_sub(spent);
        if !count_below_budgeted(CompactState::ROOT, depth, &mut counts, &mut remaining) {
            return Err(EngineError::Exhausted {
                budget: node_budget,
                completed,
            });
        }
        spent += counts.iter().sum::<u64>();
        on_level(depth, counts[depth - 1]);
        completed.push(counts[depth - 1]);
    }
    Ok(completed)
}

fn count_below_budgeted(
    node: CompactState,
    max_order: usize,
    counts: &mut [u64],
    remaining: &mut u64,
) -> bool {
    let next = node.len as usize + 1;
    if next > max_order {
        return true;
    }
    let fan = u64::from(node.fan_out());
    if *remaining < fan {
        return false;
    }
    *remaining -= fan;
    counts[next - 1] += fan;
    if next == max_order {
        return true;
    }
    node.children()
        .all(|child| count_below_budgeted(child, max_order, counts, remaining))
}

/// Level-storing breadth-first generation with full states, as a cross-check
/// for small orders. Memory grows with the widest level.
pub fn open_levels(max_order: usize) -> Vec<Vec<OpenState>> {
    let mut levels: Vec<Vec<OpenState>> = Vec::with_capacity(max_order);
    let mut current = vec![OpenState::empty()];
    for _ in 0..max_order {
        current = current.iter().flat_map(OpenState::children).collect();
        levels.push(current.clone());
    }
    levels
}

pub fn count_open_levels_bfs(max_order: usize) -> Vec<u64> {
    open_levels(max_order)
        .iter()
        .map(|level| level.len() as u64)
        .collect()
}

/// Breadth-first over compressed states with multiplicities: memory is one
/// level of distinct `(stars, used)` pairs.
pub fn count_open_levels_compressed(max_order: usize) -> Result<Vec<u64>, EngineError> {
    check_count_order(max_order)?;
    let mut level: HashMap<CompactState, u64> = HashMap::from([(CompactState::ROOT, 1)]);
    let mut counts = Vec::with_capacity(max_order);
    for _ in 0..max_order {
        let mut next: HashMap<CompactState, u64> = HashMap::with_capacity(level.len() * 2);
        for (state, mult) in level {
            for child in state.children() {
                *next.entry(child).or_insert(0) += mult;
            }
        }
        counts.push(next.values().sum());
        level = next;
    }
    Ok(counts)
}

/// Element-wise sum; the shorter side is padded with zeros.
pub fn merge_counts(mut a: Vec<u64>, b: &[u64]) -> Vec<u64> {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// First level holding at least `4 * workers` nodes, capped at `max_level`.
fn split_frontier<T, F>(root: T, max_level: usize, workers: usize, expand: F) -> (Vec<T>, Vec<u64>)
where
    F: Fn(&T) -> Vec<T>,
{
    let mut frontier = vec![root];
    let mut counts = Vec::new();
    while counts.len() < max_level && frontier.len() < 4 * workers && !frontier.is_empty() {
        frontier = frontier.iter().flat_map(&expand).collect();
        counts.push(frontier.len() as u64);
    }
    (frontier, counts)
}

fn thread_pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("failed to build worker pool")
}

/// Same result as [`count_open_levels`] for any worker count.
pub fn parallel_count(max_order: usize, workers: usize) -> Result<Vec<u64>, EngineError> {
    check_count_order(max_order)?;
    let (frontier, top) = split_frontier(CompactState::ROOT, max_order, workers, |s| {
        s.children().collect()
    });
    let pool = thread_pool(workers);
    let below = pool.install(|| {
        frontier
            .par_iter()
            .map(|&node| {
                let mut counts = vec![0u64; max_order];
                count_below(node, max_order, &mut counts);
                counts
            })
            .reduce(|| vec![0u64; max_order], |a, b| merge_counts(a, &b))
    });
    Ok(merge_counts(top, &below))
}

/// Outcome of a generating-tree search for Skolem sequences.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumerationReport {
    pub target_order: usize,
    /// Nodes visited at levels `1..=2N` (entry `d - 1` is level `d`). With
    /// pruning off these are exactly `|OS_d|`.
    pub per_level_counts: Vec<u64>,
    pub skolem_count: u64,
    /// Nodes rejected by the feasibility check (not counted as visited).
    pub pruned_nodes: u64,
    pub elapsed: Duration,
}

impl EnumerationReport {
    pub fn visited(&self) -> u64 {
        self.per_level_counts.iter().sum()
    }

    /// Associative, commutative combination of two subtree reports.
    pub fn merge(mut self, other: &EnumerationReport) -> EnumerationReport {
        self.target_order = self.target_order.max(other.target_order);
        self.per_level_counts = merge_counts(self.per_level_counts, &other.per_level_counts);
        self.skolem_count += other.skolem_count;
        self.pruned_nodes += other.pruned_nodes;
        self.elapsed = self.elapsed.max(other.elapsed);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Open,
    Closed(u32),
}

#[derive(Clone, Copy, Debug)]
enum Move {
    Open,
    Close(u32),
}

struct Frame {
    opener_pending: bool,
    closers_pending: u64,
    via: Option<Move>,
}

/// Depth-first iterator over the Skolem sequences of one order.
///
/// Yields in canonical child order (opener first, closers by increasing star
/// value). Call [`SkolemIter::report`] after exhaustion for statistics.
pub struct SkolemIter {
    target: usize,
    prune: bool,
    progress: bool,
    slots: Vec<Slot>,
    stars: u64,
    used: u64,
    stack: Vec<Frame>,
    report: EnumerationReport,
    started: Instant,
    next_progress: u64,
}

impl SkolemIter {
    fn new(root: &OpenState, target: usize, prune: bool) -> Self {
        let compact = CompactState::from_state(root).expect("root fits the bitmask state");
        let slots = root
            .entries()
            .iter()
            .map(|e| match e {
                Entry::Open(_) => Slot::Open,
                Entry::Closed(k) => Slot::Closed(*k),
            })
            .collect();
        let mut it = SkolemIter {
            target,
            prune,
            progress: false,
            slots,
            stars: compact.stars,
            used: compact.used,
            stack: Vec::with_capacity(2 * target + 1),
            report: EnumerationReport {
                target_order: target,
                per_level_counts: vec![0; 2 * target],
                ..EnumerationReport::default()
            },
            started: Instant::now(),
            next_progress: PROGRESS_INTERVAL,
        };
        let root_ok = root.order() < 2 * target && (!prune || compact.feasible(target));
        if root_ok {
            it.stack.push(it.frame(None));
        }
        it
    }

    /// Writes a line to standard error every [`PROGRESS_INTERVAL`] nodes.
    pub fn with_progress(mut self, on: bool) -> Self {
        self.progress = on;
        self
    }

    pub fn report(&self) -> EnumerationReport {
        let mut report = self.report.clone();
        report.elapsed = self.started.elapsed();
        report
    }

    fn frame(&self, via: Option<Move>) -> Frame {
        Frame {
            opener_pending: true,
            closers_pending: self.stars & !self.used,
            via,
        }
    }

    fn apply(&mut self, mv: Move) {
        match mv {
            Move::Open => {
                self.slots.push(Slot::Open);
                self.stars = (self.stars << 1) | 0b10;
            }
            Move::Close(j) => {
                let idx = self.slots.len() - j as usize;
                debug_assert_eq!(self.slots[idx], Slot::Open);
                self.slots[idx] = Slot::Closed(j);
                self.slots.push(Slot::Closed(j));
                self.used |= 1 << j;
                self.stars = (self.stars & !(1 << j)) << 1;
            }
        }
    }

    fn undo(&mut self, mv: Move) {
        self.slots.pop();
        match mv {
            Move::Open => self.stars = (self.stars & !0b10) >> 1,
            Move::Close(j) => {
                let idx = self.slots.len() - j as usize;
                self.slots[idx] = Slot::Open;
                self.used &= !(1 << j);
                self.stars = (self.stars >> 1) | (1 << j);
            }
        }
    }

    fn is_skolem_leaf(&self) -> bool {
        self.used == low_mask(self.target) && self.stars == 0
    }

    fn current_sequence(&self) -> SkolemSequence {
        let values = self
            .slots
            .iter()
            .map(|s| match s {
                Slot::Closed(k) => *k,
                Slot::Open => unreachable!("leaf has no open arcs"),
            })
            .collect();
        SkolemSequence::new(values).expect("label check implies a Skolem sequence")
    }

    fn tick(&mut self) {
        if self.progress && self.report.visited() + self.report.pruned_nodes >= self.next_progress {
            eprintln!(
                "progress: order={} visited={} pruned={} found={} elapsed={:.1?}",
                self.target,
                self.report.visited(),
                self.report.pruned_nodes,
                self.report.skolem_count,
                self.started.elapsed()
            );
            self.next_progress += PROGRESS_INTERVAL;
        }
    }
}

impl Iterator for SkolemIter {
    type Item = SkolemSequence;

    fn next(&mut self) -> Option<SkolemSequence> {
        let depth = 2 * self.target;
        loop {
            let top = self.stack.last_mut()?;
            let mv = if top.opener_pending {
                top.opener_pending = false;
                Move::Open
            } else if top.closers_pending != 0 {
                let j = top.closers_pending.trailing_zeros();
                top.closers_pending &= top.closers_pending - 1;
                Move::Close(j)
            } else {
                let via = top.via;
                self.stack.pop();
                if let Some(mv) = via {
                    self.undo(mv);
                }
                continue;
            };
            self.apply(mv);
            let len = self.slots.len();
            if self.prune && !feasible_masks(len, self.stars, self.used, self.target) {
                self.report.pruned_nodes += 1;
                self.undo(mv);
                self.tick();
                continue;
            }
            self.report.per_level_counts[len - 1] += 1;
            self.tick();
            if len < depth {
                let frame = self.frame(Some(mv));
                self.stack.push(frame);
                continue;
            }
            let hit = self.is_skolem_leaf().then(|| self.current_sequence());
            self.undo(mv);
            if let Some(seq) = hit {
                self.report.skolem_count += 1;
                return Some(seq);
            }
        }
    }
}

/// Lazily enumerates every Skolem sequence of order `order`.
pub fn enumerate_skolem(order: usize, prune: bool) -> Result<SkolemIter, EngineError> {
    check_enum_order(order)?;
    Ok(SkolemIter::new(&OpenState::empty(), order, prune))
}

/// Error from a search whose sink may fail.
#[derive(Debug, PartialEq, Eq)]
pub enum SearchError<E> {
    Engine(EngineError),
    Sink(E),
}

impl<E: std::fmt::Display> std::fmt::Display for SearchError<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SearchError::Engine(e) => write!(f, "{e}"),
            SearchError::Sink(e) => write!(f, "sink failed: {e}"),
        }
    }
}

impl<E: std::fmt::Debug + std::fmt::Display> std::error::Error for SearchError<E> {}

#[derive(Clone, Copy, Debug, Default)]
pub struct SearchOptions {
    pub prune: bool,
    pub progress: bool,
}

/// Depth-first search delivering each Skolem leaf to `sink` in canonical
/// order. A failing sink aborts the traversal.
pub fn dfs_enumerate<E, F>(
    target_order: usize,
    options: SearchOptions,
    mut sink: F,
) -> Result<EnumerationReport, SearchError<E>>
where
    F: FnMut(SkolemSequence) -> Result<(), E>,
{
    let mut it = enumerate_skolem(target_order, options.prune)
        .map_err(SearchError::Engine)?
        .with_progress(options.progress);
    for seq in it.by_ref() {
        sink(seq).map_err(SearchError::Sink)?;
    }
    Ok(it.report())
}

/// Parallel form of [`dfs_enumerate`]: subtrees below the split level are
/// searched concurrently and `sink` is called from several threads in no
/// particular order. Counts in the report do not depend on `workers`.
pub fn parallel_enumerate<E, F>(
    target_order: usize,
    options: SearchOptions,
    workers: usize,
    sink: F,
) -> Result<EnumerationReport, SearchError<E>>
where
    E: Send,
    F: Fn(SkolemSequence) -> Result<(), E> + Sync,
{
    check_enum_order(target_order).map_err(SearchError::Engine)?;
    let started = Instant::now();
    let prune = options.prune;
    let expand = |s: &OpenState| -> Vec<OpenState> {
        s.children()
            .into_iter()
            .filter(|c| !prune || prune_feasible(c, target_order))
            .collect()
    };
    // the split never reaches the leaves, so every Skolem hit comes from a worker
    let (frontier, top) = split_frontier(OpenState::empty(), 2 * target_order - 1, workers, expand);
    let mut head = EnumerationReport {
        target_order,
        per_level_counts: top,
        ..EnumerationReport::default()
    };
    if prune {
        // recount rejections made while splitting
        let mut level = vec![OpenState::empty()];
        for _ in 0..head.per_level_counts.len() {
            let all: Vec<OpenState> = level.iter().flat_map(OpenState::children).collect();
            let kept: Vec<OpenState> = all
                .into_iter()
                .filter(|c| {
                    let ok = prune_feasible(c, target_order);
                    head.pruned_nodes += u64::from(!ok);
                    ok
                })
                .collect();
            level = kept;
        }
    }
    let pool = thread_pool(workers);
    let below = pool.install(|| {
        frontier
            .par_iter()
            .map(|root| {
                let mut it = SkolemIter::new(root, target_order, prune).with_progress(options.progress);
                for seq in it.by_ref() {
                    sink(seq)?;
                }
                Ok(it.report())
            })
            .try_reduce(EnumerationReport::default, |a, b| Ok(a.merge(&b)))
    });
    let mut report = head.merge(&below.map_err(SearchError::Sink)?);
    report.elapsed = started.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(count_open_levels(6).unwrap(), vec![1, 2, 4, 8, 20, 52]);
        assert_eq!(*count_open_levels(10).unwrap().last().unwrap(), 4176);
    }

    #[test]
    fn count_rejects_bad_orders() {
        assert_eq!(count_open_levels(0), Err(EngineError::ZeroOrder));
        assert!(matches!(count_open_levels(64), Err(EngineError::OrderTooLarge { .. })));
        assert!(enumerate_skolem(0, true).is_err());
        assert!(enumerate_skolem(32, true).is_err());
    }

    #[test]
    fn compact_moves_match_full_states() {
        let s: OpenState = "*5,*4,1,1,*1".parse().unwrap();
        let c = CompactState::from_state(&s).unwrap();
        let full: Vec<CompactState> = s
            .children()
            .iter()
            .map(|x| CompactState::from_state(x).unwrap())
            .collect();
        assert_eq!(c.children().collect::<Vec<_>>(), full);
    }

    #[test]
    fn prune_examples() {
        // order 7 with two open arcs against N = 4: 8 - 7 - 2 < 0
        let s: OpenState = "*7,4,1,1,*3,4,*1".parse().unwrap();
        assert!(!prune_feasible(&s, 4));
        let star5: OpenState = "*5,*4,1,1,*1".parse().unwrap();
        assert!(!prune_feasible(&star5, 4));
        for n in 1..10 {
            assert!(prune_feasible(&OpenState::empty(), n));
            assert!(CompactState::ROOT.feasible(n));
        }
        // used value 3 > N = 2
        let big: OpenState = "3,1,1,3".parse().unwrap();
        assert!(!prune_feasible(&big, 2));
        let both: OpenState = "*2,*1".parse().unwrap();
        assert!(prune_feasible(&both, 2));
        // stars {2, 3}, used {3}: with N = 3 the star 3 has no free length >= 3
        let hall: OpenState = "3,*3,*2,3".parse().unwrap();
        assert!(!prune_feasible(&hall, 3));
        assert!(prune_feasible(&hall, 4));
    }

    #[test]
    fn bounded_counting_reports_partial_levels() {
        let mut seen = Vec::new();
        let full = count_open_levels_bounded(8, u64::MAX, |n, c| seen.push((n, c))).unwrap();
        assert_eq!(full, count_open_levels(8).unwrap());
        assert_eq!(seen.len(), 8);
        match count_open_levels_bounded(10, 200, |_, _| {}) {
            Err(EngineError::Exhausted { completed, .. }) => {
                assert!(!completed.is_empty());
                assert_eq!(completed, count_open_levels(completed.len()).unwrap());
            }
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn merge_pads_and_sums() {
        assert_eq!(merge_counts(vec![1, 2], &[3, 4, 5]), vec![4, 6, 5]);
        assert_eq!(merge_counts(vec![], &[]), Vec::<u64>::new());
    }

    #[test]
    fn enumerate_order_one() {
        let all: Vec<String> = enumerate_skolem(1, false).unwrap().map(|s| s.to_string()).collect();
        assert_eq!(all, vec!["1,1"]);
    }

    #[test]
    fn sink_errors_abort() {
        let mut calls = 0;
        let res = dfs_enumerate(4, SearchOptions::default(), |_| {
            calls += 1;
            if calls == 2 {
                Err("full")
            } else {
                Ok(())
            }
        });
        assert_eq!(res, Err(SearchError::Sink("full")));
        assert_eq!(calls, 2);
    }
}
