//! Exhaustive search for commutative (Jordan) loops of a fixed order.
//!
//! The identity sits at 0 and only cells `(i, j)` with `1 ≤ i ≤ j` are
//! decided; the rest follows by mirroring and propagation. The search is
//! complete over labeled tables, and isomorphism classes are formed
//! afterwards.

mod partial;

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicU8, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::iso::{find_isomorphism, require_same_order, table_invariant};
use crate::props::{check, PropertyTag};
use crate::table::MagmaTable;

use partial::propagate_in_place;
pub use partial::{propagate, Constraints, PartialTable, MAX_SEARCH_ORDER};

/// What to enumerate and how much effort to spend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    pub order: usize,
    /// Keep only Jordan loops; otherwise all commutative loops.
    pub require_jordan: bool,
    pub nonassociative_only: bool,
    /// Return one representative per isomorphism class.
    pub up_to_iso: bool,
    pub node_limit: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Stop after this many models (before isomorphism reduction).
    pub result_limit: Option<usize>,
}

impl SearchOptions {
    pub fn new(order: usize) -> Self {
        Self {
            order,
            require_jordan: true,
            nonassociative_only: false,
            up_to_iso: false,
            node_limit: None,
            time_budget: None,
            result_limit: None,
        }
    }

    pub fn jordan(mut self, yes: bool) -> Self {
        self.require_jordan = yes;
        self
    }

    pub fn nonassociative(mut self, yes: bool) -> Self {
        self.nonassociative_only = yes;
        self
    }

    pub fn up_to_iso(mut self, yes: bool) -> Self {
        self.up_to_iso = yes;
        self
    }

    pub fn node_limit(mut self, limit: u64) -> Self {
        self.node_limit = Some(limit);
        self
    }

    pub fn time_budget(mut self, budget: Duration) -> Self {
        self.time_budget = Some(budget);
        self
    }

    pub fn result_limit(mut self, limit: usize) -> Self {
        self.result_limit = Some(limit);
        self
    }

    fn constraints(&self) -> Constraints {
        if self.require_jordan {
            Constraints::JORDAN
        } else {
            Constraints::COMMUTATIVE
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Search nodes whose propagation succeeded.
    pub nodes: u64,
    /// Branches closed by a propagation contradiction.
    pub failures: u64,
    /// Models accepted by the filters.
    pub models_found: usize,
    /// Models returned after isomorphism reduction (equal to
    /// `models_found` when no reduction was requested).
    pub models_after_iso: usize,
    pub elapsed: Duration,
    /// False when a budget or limit cut the search short.
    pub complete: bool,
}

impl fmt::Display for SearchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "# nodes={} models={} classes={} seconds={:.3}",
            self.nodes,
            self.models_found,
            self.models_after_iso,
            self.elapsed.as_secs_f64()
        )?;
        if !self.complete {
            write!(f, " complete=false")?;
        }
        Ok(())
    }
}

/// Models in lexicographic order with the statistics of the run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub models: Vec<MagmaTable>,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    NodeLimit,
    TimeBudget,
    ResultLimit,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StopReason::NodeLimit => "node limit reached",
            StopReason::TimeBudget => "time budget exhausted",
            StopReason::ResultLimit => "result limit reached",
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error("invalid search options: {0}")]
    InvalidOptions(#[from] Error),
    /// The search stopped early; the outcome holds what was found so far.
    #[error("search incomplete ({reason}); {} models found so far", .partial.stats.models_found)]
    Incomplete {
        reason: StopReason,
        partial: Box<SearchOutcome>,
    },
}

const RUNNING: u8 = 0;

struct Shared {
    constraints: Constraints,
    opts: SearchOptions,
    start: Instant,
    nodes: AtomicU64,
    failures: AtomicU64,
    found: AtomicUsize,
    stop: AtomicBool,
    reason: AtomicU8,
}

impl Shared {
    fn halt(&self, reason: StopReason) {
        let code = match reason {
            StopReason::NodeLimit => 1,
            StopReason::TimeBudget => 2,
            StopReason::ResultLimit => 3,
        };
        let _ = self
            .reason
            .compare_exchange(RUNNING, code, Ordering::SeqCst, Ordering::SeqCst);
        self.stop.store(true, Ordering::SeqCst);
    }

    fn reason(&self) -> Option<StopReason> {
        match self.reason.load(Ordering::SeqCst) {
            1 => Some(StopReason::NodeLimit),
            2 => Some(StopReason::TimeBudget),
            3 => Some(StopReason::ResultLimit),
            _ => None,
        }
    }

    fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }

    /// Counts a node and enforces the node and time budgets.
    fn enter(&self) -> bool {
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(limit) = self.opts.node_limit {
            if count > limit {
                self.halt(StopReason::NodeLimit);
                return false;
            }
        }
        if count % 1024 == 0 {
            if let Some(budget) = self.opts.time_budget {
                if self.start.elapsed() > budget {
                    self.halt(StopReason::TimeBudget);
                    return false;
                }
            }
        }
        !self.stopped()
    }

    fn accept(&self, pt: &PartialTable, out: &mut Vec<MagmaTable>) {
        let Some(table) = pt.to_table() else {
            return;
        };
        if self.opts.require_jordan && !check(&table, PropertyTag::Jordan).unwrap_or(false) {
            return;
        }
        if self.opts.nonassociative_only && check(&table, PropertyTag::Associative).unwrap_or(true)
        {
            return;
        }
        let count = self.found.fetch_add(1, Ordering::SeqCst) + 1;
        match self.opts.result_limit {
            Some(limit) if count > limit => {
                self.found.fetch_sub(1, Ordering::SeqCst);
                self.halt(StopReason::ResultLimit);
                return;
            }
            _ => {}
        }
        out.push(table);
    }
}

/// The undecided cell `(i, j)`, `1 ≤ i ≤ j`, with the fewest admissible
/// symbols, and that candidate mask; `None` when the table is complete.
fn choose_cell(pt: &PartialTable) -> Option<(usize, usize, u64)> {
    let n = pt.order();
    let mut best: Option<(usize, usize, u64)> = None;
    let mut best_count = u32::MAX;
    for i in 1..n {
        for j in i..n {
            if pt.get(i, j).is_some() {
                continue;
            }
            let cand = pt.candidates(i, j);
            let count = cand.count_ones();
            if count < best_count {
                best = Some((i, j, cand));
                best_count = count;
                if count <= 1 {
                    return best;
                }
            }
        }
    }
    best
}

/// Propagated children of `pt`, in ascending order of the chosen value.
fn children(pt: &PartialTable, shared: &Shared) -> Vec<PartialTable> {
    let Some((i, j, mut cand)) = choose_cell(pt) else {
        return Vec::new();
    };
    let mut out = Vec::with_capacity(cand.count_ones() as usize);
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        let mut child = pt.clone();
        let ok = child.assign(i, j, v)
            && (i == j || child.assign(j, i, v))
            && propagate_in_place(&mut child, &shared.constraints);
        if ok {
            out.push(child);
        } else {
            shared.failures.fetch_add(1, Ordering::Relaxed);
        }
    }
    out
}

fn dfs(pt: PartialTable, shared: &Shared, out: &mut Vec<MagmaTable>) {
    if !shared.enter() {
        return;
    }
    if pt.is_complete() {
        shared.accept(&pt, out);
        return;
    }
    for child in children(&pt, shared) {
        if shared.stopped() {
            return;
        }
        dfs(child, shared, out);
    }
}

/// Enumerates the commutative loops of `opts.order` that satisfy the
/// requested filters, in lexicographic order of their tables.
///
/// Work is split across threads on the first few decision levels; the
/// result does not depend on scheduling unless a result limit cuts the run
/// short. Any early stop is reported as [`SearchError::Incomplete`].
pub fn enumerate_loops(opts: &SearchOptions) -> Result<SearchOutcome, SearchError> {
    let root = PartialTable::new(opts.order)?;
    let shared = Shared {
        constraints: opts.constraints(),
        opts: opts.clone(),
        start: Instant::now(),
        nodes: AtomicU64::new(0),
        failures: AtomicU64::new(0),
        found: AtomicUsize::new(0),
        stop: AtomicBool::new(false),
        reason: AtomicU8::new(RUNNING),
    };
    let mut models = Vec::new();
    let mut root = root;
    if !propagate_in_place(&mut root, &shared.constraints) {
        shared.failures.fetch_add(1, Ordering::Relaxed);
    } else {
        // Expand breadth-first until there is enough independent work.
        let target = 8 * rayon::current_num_threads().max(1);
        let mut frontier = vec![root];
        while !frontier.is_empty() && frontier.len() < target && !shared.stopped() {
            let mut next = Vec::new();
            for pt in frontier {
                if !shared.enter() {
                    break;
                }
                if pt.is_complete() {
                    shared.accept(&pt, &mut models);
                } else {
                    next.extend(children(&pt, &shared));
                }
            }
            frontier = next;
        }
        let found: Vec<Vec<MagmaTable>> = frontier
            .into_par_iter()
            .map(|pt| {
                let mut local = Vec::new();
                dfs(pt, &shared, &mut local);
                local
            })
            .collect();
        models.extend(found.into_iter().flatten());
    }
    models.sort_unstable();

    let mut stats = SearchStats {
        nodes: shared.nodes.load(Ordering::SeqCst),
        failures: shared.failures.load(Ordering::SeqCst),
        models_found: models.len(),
        models_after_iso: models.len(),
        elapsed: Duration::ZERO,
        complete: shared.reason().is_none(),
    };
    if let Some(limit) = opts.node_limit {
        stats.nodes = stats.nodes.min(limit);
    }
    let reason = shared.reason();
    if opts.up_to_iso {
        models = classify_up_to_iso(&models)?;
        stats.models_after_iso = models.len();
    }
    stats.elapsed = shared.start.elapsed();
    let outcome = SearchOutcome { models, stats };
    match reason {
        None => Ok(outcome),
        Some(reason) => Err(SearchError::Incomplete {
            reason,
            partial: Box::new(outcome),
        }),
    }
}

/// One representative per isomorphism class, each the lexicographically
/// least member of its class, returned in lexicographic order.
pub fn classify_up_to_iso(models: &[MagmaTable]) -> Result<Vec<MagmaTable>> {
    require_same_order(models)?;
    let mut sorted: Vec<&MagmaTable> = models.iter().collect();
    sorted.sort_unstable();
    sorted.dedup();
    let mut buckets: HashMap<_, Vec<&MagmaTable>> = HashMap::new();
    let mut reps = Vec::new();
    for m in sorted {
        let bucket = buckets.entry(table_invariant(m)).or_default();
        let mut known = false;
        for r in bucket.iter() {
            if find_isomorphism(r, m)?.is_some() {
                known = true;
                break;
            }
        }
        if !known {
            bucket.push(m);
            reps.push(m.clone());
        }
    }
    Ok(reps)
}
