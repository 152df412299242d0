//! Exhaustive branch-and-bound for the maximum size of a bipartite graph on
//! `(v, w)` vertices with girth at least 6 or 8.
//!
//! The larger class is laid out as columns and the smaller as rows (at most
//! 64, kept as bitmasks). Columns receive neighbour sets one at a time, each set
//! built by adding edges in increasing row order. An edge `(r, j)` is accepted
//! only if no row already adjacent to column `j` lies within distance
//! `girth - 4` of `r`, which is exactly the condition that the new edge closes
//! no cycle shorter than the target.
//!
//! Pruning:
//! - columns appear in non-increasing degree, and within a run of equal degree
//!   in lexicographically non-decreasing neighbour set; the first column is
//!   `{0, .., d-1}`. Every graph has a relabelling in this form.
//! - the edges still available are at most the current column degree times the
//!   number of columns left.
//! - optionally, the closed-form bound (cubic for girth 8, Reiman for girth 6)
//!   caps every completion. This makes the result depend on the bound it would
//!   otherwise check, so it is off by default.
//!
//! The tree is split after the first two columns. Subtrees are searched
//! independently against the same greedy incumbent and merged in order, so a
//! certificate, including its node count, does not depend on how subtrees are
//! scheduled.

use alloc::vec;
use alloc::vec::Vec;
use core::time::Duration;

use thiserror::Error;

use crate::bounds::{cubic_max_e, reiman_max_e, GirthTarget};
use crate::graph::{BipartiteGraph, Edge};

/// Largest supported size of the smaller class.
pub const MAX_ROWS: usize = 64;

const SPLIT_DEPTH: usize = 2;
const CLOCK_INTERVAL: u64 = 1 << 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("class sizes must be at least 1 (got v = {v}, w = {w})")]
    EmptyClass { v: usize, w: usize },
    #[error("the smaller class has {0} vertices; at most 64 are supported")]
    TooLarge(usize),
    #[error("search budget exhausted before the result was exhaustive")]
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_nodes: u64,
    /// Cap completions by the closed-form bound for the target girth.
    pub bound_pruning: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_nodes: 100_000_000, bound_pruning: false }
    }
}

/// Wall-clock budget hook. The core crate has no clock; [`Unlimited`] never expires.
pub trait Clock: Sync {
    fn expired(&self) -> bool;
    fn elapsed(&self) -> Duration;
}

pub struct Unlimited;

impl Clock for Unlimited {
    fn expired(&self) -> bool {
        false
    }

    fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchCertificate {
    pub v: usize,
    pub w: usize,
    pub min_girth: GirthTarget,
    pub e_max: usize,
    pub witness: BipartiteGraph,
    /// No graph with `e_max + 1` edges meets the girth target.
    pub exhaustive: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Result of searching one subtree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtreeOutcome {
    /// Best strict improvement over the incumbent, as column neighbour sets.
    pub improvement: Option<(usize, Vec<u64>)>,
    pub nodes: u64,
    /// Stopped by the node budget or the clock.
    pub truncated: bool,
}

/// A search split into independently solvable subtrees.
#[derive(Debug, Clone)]
pub struct SearchPlan {
    v: usize,
    w: usize,
    girth: GirthTarget,
    rows: usize,
    cols: usize,
    cap: usize,
    max_nodes: u64,
    incumbent: (usize, Vec<u64>),
    prefixes: Vec<Vec<u64>>,
    planning_nodes: u64,
    planning_truncated: bool,
}

impl SearchPlan {
    pub fn new(v: usize, w: usize, girth: GirthTarget, limits: SearchLimits) -> Result<Self, SearchError> {
        if v == 0 || w == 0 {
            return Err(SearchError::EmptyClass { v, w });
        }
        let (rows, cols) = (v.min(w), v.max(w));
        if rows > MAX_ROWS {
            return Err(SearchError::TooLarge(rows));
        }
        let cap = if limits.bound_pruning {
            let b = match girth {
                GirthTarget::Six => reiman_max_e(v as u64, w as u64),
                GirthTarget::Eight => cubic_max_e(v as u64, w as u64),
            };
            b as usize
        } else {
            usize::MAX
        };
        let incumbent = greedy(rows, cols, girth);
        let mut plan = SearchPlan {
            v,
            w,
            girth,
            rows,
            cols,
            cap,
            max_nodes: limits.max_nodes,
            incumbent,
            prefixes: Vec::new(),
            planning_nodes: 0,
            planning_truncated: false,
        };
        let mut dfs = Dfs::new(&plan, limits.max_nodes, &Unlimited);
        dfs.collect = Some(Vec::new());
        dfs.column(0);
        let (nodes, truncated) = (dfs.nodes, dfs.aborted);
        let prefixes = dfs.collect.take().unwrap_or_default();
        plan.planning_nodes = nodes;
        plan.planning_truncated = truncated;
        plan.prefixes = prefixes;
        Ok(plan)
    }

    pub fn subtree_count(&self) -> usize {
        self.prefixes.len()
    }

    /// Nodes left for the subtrees once planning is paid for.
    pub fn subtree_budget(&self) -> u64 {
        self.max_nodes.saturating_sub(self.planning_nodes)
    }

    /// Searches subtree `k` with at most `budget` nodes.
    pub fn run_subtree(&self, k: usize, budget: u64, clock: &dyn Clock) -> SubtreeOutcome {
        let mut dfs = Dfs::new(self, budget, clock);
        for &set in &self.prefixes[k] {
            dfs.commit(set);
        }
        dfs.column(self.prefixes[k].len());
        let improvement = dfs.best_sets.map(|sets| (dfs.best, sets));
        SubtreeOutcome { improvement, nodes: dfs.nodes, truncated: dfs.aborted }
    }

    /// Merges subtree outcomes in order. `outcome(k, budget)` must return what
    /// [`run_subtree`](Self::run_subtree) returns for `(k, budget)`; the node
    /// budget is handed out as if subtrees ran one after another.
    pub fn certify(
        &self,
        mut outcome: impl FnMut(usize, u64) -> SubtreeOutcome,
        clock: &dyn Clock,
    ) -> SearchCertificate {
        let mut best = self.incumbent.clone();
        let mut nodes = self.planning_nodes;
        let mut exhaustive = !self.planning_truncated;
        for k in 0..self.prefixes.len() {
            let remaining = self.max_nodes.saturating_sub(nodes);
            if remaining == 0 {
                exhaustive = false;
                break;
            }
            let out = outcome(k, remaining);
            nodes += out.nodes;
            if let Some((e, sets)) = out.improvement {
                if e > best.0 {
                    best = (e, sets);
                }
            }
            if out.truncated {
                exhaustive = false;
                break;
            }
        }
        SearchCertificate {
            v: self.v,
            w: self.w,
            min_girth: self.girth,
            e_max: best.0,
            witness: self.to_graph(&best.1),
            exhaustive,
            nodes_explored: nodes,
            elapsed: clock.elapsed(),
        }
    }

    fn to_graph(&self, sets: &[u64]) -> BipartiteGraph {
        let rows_are_v = self.v <= self.w;
        let mut edges = Vec::new();
        for (col, &set) in sets.iter().enumerate() {
            for row in bits(set) {
                edges.push(if rows_are_v { Edge::new(row, col) } else { Edge::new(col, row) });
            }
        }
        BipartiteGraph::from_edges(self.v, self.w, edges).expect("search produces valid edges")
    }
}

/// Sequential search: plans, then runs every subtree in order.
pub fn max_size(
    v: usize,
    w: usize,
    girth: GirthTarget,
    limits: SearchLimits,
    clock: &dyn Clock,
) -> Result<SearchCertificate, SearchError> {
    let plan = SearchPlan::new(v, w, girth, limits)?;
    Ok(plan.certify(|k, budget| plan.run_subtree(k, budget, clock), clock))
}

/// Whether the exhaustive maximum respects the closed-form bound for the
/// target (cubic for girth 8, Reiman for girth 6). Bound pruning is disabled
/// so the search stays independent of the bound it checks.
pub fn certify_bound(
    v: usize,
    w: usize,
    girth: GirthTarget,
    max_nodes: u64,
    clock: &dyn Clock,
) -> Result<bool, SearchError> {
    let limits = SearchLimits { max_nodes, bound_pruning: false };
    let cert = max_size(v, w, girth, limits, clock)?;
    if !cert.exhaustive {
        return Err(SearchError::Indeterminate);
    }
    let bound = match girth {
        GirthTarget::Six => reiman_max_e(v as u64, w as u64),
        GirthTarget::Eight => cubic_max_e(v as u64, w as u64),
    };
    Ok(cert.e_max as u64 <= bound)
}

fn bits(mut set: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        (set != 0).then(|| {
            let r = set.trailing_zeros() as usize;
            set &= set - 1;
            r
        })
    })
}

/// Rows within distance `girth - 4` of each row, given per-row "shares a column" masks.
fn near_from_share(share: &[u64], girth: GirthTarget) -> Vec<u64> {
    match girth {
        GirthTarget::Six => share.to_vec(),
        GirthTarget::Eight => share
            .iter()
            .map(|&s| bits(s).fold(s, |acc, b| acc | share[b]))
            .collect(),
    }
}

/// First-fit incumbent: each column takes every row that keeps the girth.
fn greedy(rows: usize, cols: usize, girth: GirthTarget) -> (usize, Vec<u64>) {
    let mut share = vec![0u64; rows];
    let mut sets = Vec::with_capacity(cols);
    let mut edges = 0;
    for _ in 0..cols {
        let near = near_from_share(&share, girth);
        let mut set = 0u64;
        for r in 0..rows {
            if near[r] & set == 0 {
                set |= 1 << r;
            }
        }
        for r in bits(set) {
            share[r] |= set;
        }
        edges += set.count_ones() as usize;
        sets.push(set);
    }
    (edges, sets)
}

struct Dfs<'a> {
    plan: &'a SearchPlan,
    clock: &'a dyn Clock,
    budget: u64,
    nodes: u64,
    aborted: bool,
    sets: Vec<u64>,
    edges: usize,
    share: Vec<Vec<u64>>,
    best: usize,
    best_sets: Option<Vec<u64>>,
    collect: Option<Vec<Vec<u64>>>,
}

impl<'a> Dfs<'a> {
    fn new(plan: &'a SearchPlan, budget: u64, clock: &'a dyn Clock) -> Self {
        Dfs {
            plan,
            clock,
            budget,
            nodes: 0,
            aborted: false,
            sets: Vec::with_capacity(plan.cols),
            edges: 0,
            share: vec![vec![0u64; plan.rows]],
            best: plan.incumbent.0,
            best_sets: None,
            collect: None,
        }
    }

    /// Counts a node; false once the budget or the clock runs out.
    fn tick(&mut self) -> bool {
        if self.aborted {
            return false;
        }
        if self.nodes == self.budget
            || (self.nodes.is_multiple_of(CLOCK_INTERVAL) && self.nodes > 0 && self.clock.expired())
        {
            self.aborted = true;
            return false;
        }
        self.nodes += 1;
        true
    }

    fn commit(&mut self, set: u64) {
        let mut share = self.share.last().expect("share stack is never empty").clone();
        for r in bits(set) {
            share[r] |= set;
        }
        self.share.push(share);
        self.sets.push(set);
        self.edges += set.count_ones() as usize;
    }

    fn uncommit(&mut self) {
        let set = self.sets.pop().expect("uncommit after commit");
        self.share.pop();
        self.edges -= set.count_ones() as usize;
    }

    fn column(&mut self, j: usize) {
        if !self.tick() {
            return;
        }
        let plan = self.plan;
        if let Some(prefixes) = self.collect.as_mut() {
            if j == SPLIT_DEPTH.min(plan.cols) {
                prefixes.push(self.sets.clone());
                return;
            }
        }
        if j == plan.cols {
            if self.edges > self.best {
                self.best = self.edges;
                self.best_sets = Some(self.sets.clone());
            }
            return;
        }
        let left = plan.cols - j;
        let prev = if j == 0 { None } else { Some(self.sets[j - 1]) };
        let max_degree = prev.map_or(plan.rows, |p| p.count_ones() as usize);
        let near = near_from_share(self.share.last().expect("share stack is never empty"), plan.girth);
        for d in (0..=max_degree).rev() {
            let bound = (self.edges + d * left).min(plan.cap);
            if bound <= self.best {
                break;
            }
            if j == 0 {
                // first column is {0, .., d-1} up to relabelling rows
                let set = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };
                self.commit(set);
                self.column(1);
                self.uncommit();
            } else {
                let floor = prev.filter(|p| p.count_ones() as usize == d);
                let floor_rows: Vec<usize> = floor.map(|p| bits(p).collect()).unwrap_or_default();
                self.pick(j, &near, d, 0, 0, floor.map(|_| floor_rows.as_slice()));
            }
            if self.aborted {
                return;
            }
        }
    }

    /// Extends the partial neighbour set `chosen` of column `j` to `d` rows,
    /// trying rows from `start` upwards. While `floor` is `Some`, the set is
    /// still equal to the previous column's on its first elements and must
    /// not drop below it.
    fn pick(&mut self, j: usize, near: &[u64], d: usize, start: usize, chosen: u64, floor: Option<&[usize]>) {
        let count = chosen.count_ones() as usize;
        if count == d {
            self.commit(chosen);
            self.column(j + 1);
            self.uncommit();
            return;
        }
        let need = d - count;
        let lowest = floor.map_or(start, |f| start.max(f[count]));
        for r in lowest..=self.plan.rows - need {
            if near[r] & chosen != 0 {
                continue;
            }
            if !self.tick() {
                return;
            }
            let still_tight = floor.filter(|f| f[count] == r);
            self.pick(j, near, d, r + 1, chosen | (1 << r), still_tight);
            if self.aborted {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(v: usize, w: usize, g: GirthTarget) -> SearchCertificate {
        max_size(v, w, g, SearchLimits::default(), &Unlimited).unwrap()
    }

    #[test]
    fn final_remark_small_cases() {
        for (v, w, e) in [(3, 3, 5), (4, 4, 8), (5, 5, 10), (6, 5, 12)] {
            let cert = run(v, w, GirthTarget::Eight);
            assert!(cert.exhaustive);
            assert_eq!(cert.e_max, e, "({v}, {w})");
            assert_eq!(cert.witness.size(), e);
            assert!(cert.witness.girth().at_least(8));
        }
    }

    #[test]
    fn girth_six_cases() {
        let cert = run(3, 3, GirthTarget::Six);
        assert_eq!(cert.e_max, 6);
        assert_eq!(cert.witness.girth().girth, Some(6));
        let cert = run(4, 4, GirthTarget::Six);
        assert!(cert.e_max <= 9);
    }

    #[test]
    fn witness_is_oriented_like_input() {
        let cert = run(2, 5, GirthTarget::Eight);
        assert_eq!((cert.witness.v(), cert.witness.w()), (2, 5));
        let cert = run(5, 2, GirthTarget::Eight);
        assert_eq!((cert.witness.v(), cert.witness.w()), (5, 2));
    }

    #[test]
    fn certify_bound_examples() {
        assert_eq!(certify_bound(5, 5, GirthTarget::Eight, u64::MAX, &Unlimited), Ok(true));
        assert_eq!(certify_bound(4, 4, GirthTarget::Six, u64::MAX, &Unlimited), Ok(true));
        assert_eq!(certify_bound(3, 3, GirthTarget::Six, u64::MAX, &Unlimited), Ok(true));
        assert_eq!(
            certify_bound(6, 6, GirthTarget::Eight, 5, &Unlimited),
            Err(SearchError::Indeterminate)
        );
    }

    #[test]
    fn budget_exhaustion_keeps_best_so_far() {
        let limits = SearchLimits { max_nodes: 10, bound_pruning: false };
        let cert = max_size(6, 6, GirthTarget::Eight, limits, &Unlimited).unwrap();
        assert!(!cert.exhaustive);
        assert!(cert.nodes_explored <= 10);
        assert_eq!(cert.witness.size(), cert.e_max);
        assert!(cert.witness.girth().at_least(8));
    }

    #[test]
    fn bound_pruning_agrees() {
        let pruned = SearchLimits { bound_pruning: true, ..SearchLimits::default() };
        for (v, w) in [(4, 4), (5, 5), (6, 4)] {
            let a = run(v, w, GirthTarget::Eight);
            let b = max_size(v, w, GirthTarget::Eight, pruned, &Unlimited).unwrap();
            assert_eq!(a.e_max, b.e_max);
            assert!(b.nodes_explored <= a.nodes_explored);
        }
    }

    #[test]
    fn invalid_sizes() {
        assert_eq!(
            max_size(0, 3, GirthTarget::Eight, SearchLimits::default(), &Unlimited),
            Err(SearchError::EmptyClass { v: 0, w: 3 })
        );
        assert_eq!(
            SearchPlan::new(65, 70, GirthTarget::Six, SearchLimits::default()).map(|_| ()),
            Err(SearchError::TooLarge(65))
        );
    }

    #[test]
    fn bits_iterates_set_positions() {
        assert_eq!(bits(0b1011_0000).collect::<Vec<_>>(), vec![4, 5, 7]);
        assert_eq!(bits(0).count(), 0);
        assert_eq!(bits(u64::MAX).count(), 64);
    }
}
