//! Exact maximum-edge search over linear r-graphs at desk scale.
//!
//! The search enumerates edge sets in lexicographic order under the
//! canonical-augmentation rule: a new edge must be lexicographically greater
//! than every edge already present, so each edge *set* is visited exactly
//! once, as its sorted sequence. The walk is organized around vertex pairs:
//! at each node the smallest undecided pair is either covered by one of the
//! candidate edges through it or committed to stay uncovered. Every chosen
//! edge has that pair as its lexicographically least, which is what keeps
//! the edge sequence canonical, and every commitment shrinks the optimistic
//! completion bound — uncovered-pair capacity, `floor(usable / C(r,2))` —
//! so saturated branches die quickly.
//!
//! Forbidden patterns are checked incrementally: a new copy must use the
//! newly added edge, so detection anchors there.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::hypergraph::LinearHypergraph;
use crate::patterns::{self, HostView, Pattern};

/// Hard cap on the vertex count; pair sets are tracked in a 128-bit mask.
pub const MAX_SEARCH_VERTICES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("need n >= r, got n={n}, r={r}")]
    TooFewVertices { n: usize, r: usize },
    #[error("vertex count {0} beyond the desk-scale cap {MAX_SEARCH_VERTICES}")]
    TooManyVertices(usize),
    #[error("uniformity must be at least 2, got {0}")]
    InvalidUniformity(usize),
    #[error("pattern uniformity {pattern} does not match search uniformity {r}")]
    UniformityMismatch { r: usize, pattern: usize },
}

/// What to search for and under which budgets.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub n: usize,
    pub r: usize,
    pub patterns: Vec<Pattern>,
    /// Stop deepening beyond this many edges; the result is then a lower
    /// bound and flagged inexact.
    pub edge_budget: Option<usize>,
    /// Wall-clock cutoff; exceeded searches unwind and report inexact.
    pub time_budget: Option<Duration>,
    /// Evaluate search branches concurrently. The optimum is unaffected;
    /// the witness and node count may differ between runs.
    pub parallel: bool,
}

impl SearchConfig {
    pub fn new(n: usize, r: usize) -> Self {
        SearchConfig {
            n,
            r,
            patterns: Vec::new(),
            edge_budget: None,
            time_budget: None,
            parallel: false,
        }
    }

    pub fn with_patterns(mut self, patterns: Vec<Pattern>) -> Self {
        self.patterns = patterns;
        self
    }
}

/// Outcome of a search run.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub max_edges: usize,
    /// A graph attaining `max_edges`; linear and free of every configured
    /// pattern.
    pub witness: LinearHypergraph,
    /// Search-tree nodes entered, the root included.
    pub nodes_explored: u64,
    /// True iff no budget truncated the run, i.e. `max_edges` is the true
    /// optimum.
    pub exact: bool,
}

/// Computes the maximum edge count of a pattern-free linear r-graph on n
/// vertices, with one witness.
pub fn exact_turan(cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    if cfg.r < 2 {
        return Err(SearchError::InvalidUniformity(cfg.r));
    }
    if cfg.n < cfg.r {
        return Err(SearchError::TooFewVertices { n: cfg.n, r: cfg.r });
    }
    if cfg.n > MAX_SEARCH_VERTICES {
        return Err(SearchError::TooManyVertices(cfg.n));
    }
    for p in &cfg.patterns {
        if p.graph().r() != cfg.r {
            return Err(SearchError::UniformityMismatch {
                r: cfg.r,
                pattern: p.graph().r(),
            });
        }
    }

    let ctx = Context::new(cfg);
    let outcome = if cfg.parallel {
        run_parallel(&ctx)
    } else {
        let mut worker = Worker::new(&ctx);
        worker.dfs();
        worker.into_outcome()
    };

    let mut witness = LinearHypergraph::new_empty(cfg.n, cfg.r).expect("r >= 2");
    for &idx in &outcome.best_stack {
        witness
            .add_edge(&ctx.catalog[idx].vertices)
            .expect("stack edges are pairwise compatible");
    }
    debug_assert_eq!(witness.edge_count(), outcome.best_size);
    Ok(SearchResult {
        max_edges: outcome.best_size,
        witness,
        nodes_explored: outcome.nodes,
        exact: !outcome.truncated,
    })
}

/// The packing baseline: `exact_turan` with no forbidden patterns.
pub fn max_linear(n: usize, r: usize) -> Result<SearchResult, SearchError> {
    exact_turan(&SearchConfig::new(n, r))
}

struct Candidate {
    vertices: Vec<usize>,
    pair_mask: u128,
}

struct Context<'a> {
    catalog: Vec<Candidate>,
    /// Catalog ids of the edges whose lexicographically least pair is the
    /// given pair; ascending, so edges are tried in lex order.
    by_least_pair: Vec<Vec<usize>>,
    patterns: &'a [Pattern],
    n: usize,
    total_pairs: u32,
    pairs_per_edge: u32,
    edge_budget: Option<usize>,
    deadline: Option<Instant>,
    global_best: AtomicUsize,
}

impl<'a> Context<'a> {
    fn new(cfg: &'a SearchConfig) -> Self {
        let (n, r) = (cfg.n, cfg.r);
        let total_pairs = n * (n - 1) / 2;
        // All r-subsets of 0..n, lexicographically.
        let catalog: Vec<Candidate> = (0..n)
            .combinations(r)
            .map(|vertices| {
                let mut mask = 0u128;
                for i in 0..vertices.len() {
                    for j in i + 1..vertices.len() {
                        mask |= 1u128 << pair_id(vertices[i], vertices[j], n);
                    }
                }
                Candidate {
                    vertices,
                    pair_mask: mask,
                }
            })
            .collect();
        let mut by_least_pair = vec![Vec::new(); total_pairs];
        for (id, cand) in catalog.iter().enumerate() {
            let least = pair_id(cand.vertices[0], cand.vertices[1], n) as usize;
            by_least_pair[least].push(id);
        }
        Context {
            catalog,
            by_least_pair,
            patterns: &cfg.patterns,
            n,
            total_pairs: total_pairs as u32,
            pairs_per_edge: (r * (r - 1) / 2) as u32,
            edge_budget: cfg.edge_budget,
            deadline: cfg.time_budget.map(|d| Instant::now() + d),
            global_best: AtomicUsize::new(0),
        }
    }
}

fn pair_id(u: usize, v: usize, n: usize) -> u32 {
    debug_assert!(u < v);
    (u * n - u * (u + 1) / 2 + (v - u - 1)) as u32
}

/// Host state the pattern engine can read directly.
struct SearchHost {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl HostView for SearchHost {
    fn vertex_count(&self) -> usize {
        self.n
    }
    fn edge_count(&self) -> usize {
        self.edges.len()
    }
    fn edge_vertices(&self, id: usize) -> &[usize] {
        &self.edges[id]
    }
}

/// A suspended search position, used to hand branches to worker threads.
#[derive(Clone)]
struct NodeState {
    covered: u128,
    skipped: u128,
    stack: Vec<usize>,
}

struct Outcome {
    best_size: usize,
    best_stack: Vec<usize>,
    nodes: u64,
    truncated: bool,
}

enum Visit {
    /// Cut off: bound, budget, or no undecided pair left.
    Closed,
    /// Undecided pair to branch on.
    Branch(u32),
}

struct Worker<'a> {
    ctx: &'a Context<'a>,
    host: SearchHost,
    stack: Vec<usize>,
    covered: u128,
    skipped: u128,
    nodes: u64,
    truncated: bool,
    best_size: usize,
    best_stack: Vec<usize>,
}

impl<'a> Worker<'a> {
    fn new(ctx: &'a Context<'a>) -> Self {
        Worker {
            ctx,
            host: SearchHost {
                n: ctx.n,
                edges: Vec::new(),
            },
            stack: Vec::new(),
            covered: 0,
            skipped: 0,
            nodes: 0,
            truncated: false,
            best_size: 0,
            best_stack: Vec::new(),
        }
    }

    fn restore(ctx: &'a Context<'a>, state: &NodeState) -> Self {
        let mut w = Worker::new(ctx);
        w.covered = state.covered;
        w.skipped = state.skipped;
        w.stack = state.stack.clone();
        for &idx in &state.stack {
            w.host.edges.push(ctx.catalog[idx].vertices.clone());
        }
        w
    }

    fn into_outcome(self) -> Outcome {
        Outcome {
            best_size: self.best_size,
            best_stack: self.best_stack,
            nodes: self.nodes,
            truncated: self.truncated,
        }
    }

    /// Bookkeeping shared by the recursive walk and the frontier expansion:
    /// counts the node, records improvements, applies budgets and the
    /// optimistic bound, and picks the pair to branch on.
    fn visit(&mut self) -> Visit {
        self.nodes += 1;
        let cur = self.stack.len();
        if cur > self.best_size {
            self.best_size = cur;
            self.best_stack = self.stack.clone();
            self.ctx.global_best.fetch_max(cur, Ordering::Relaxed);
        }
        if let Some(cap) = self.ctx.edge_budget {
            if cur >= cap {
                self.truncated = true;
                return Visit::Closed;
            }
        }
        if let Some(deadline) = self.ctx.deadline {
            if Instant::now() >= deadline {
                self.truncated = true;
                return Visit::Closed;
            }
        }
        let decided = self.covered | self.skipped;
        let usable = self.ctx.total_pairs - decided.count_ones();
        let best_seen = self
            .best_size
            .max(self.ctx.global_best.load(Ordering::Relaxed));
        if cur + (usable / self.ctx.pairs_per_edge) as usize <= best_seen {
            return Visit::Closed;
        }
        let undecided = !decided & low_mask(self.ctx.total_pairs);
        if undecided == 0 {
            return Visit::Closed;
        }
        Visit::Branch(undecided.trailing_zeros())
    }

    fn dfs(&mut self) {
        let pair = match self.visit() {
            Visit::Closed => return,
            Visit::Branch(p) => p,
        };
        // Cover the pair with each candidate edge in lex order, then commit
        // to leaving it uncovered.
        let candidates = self.ctx.by_least_pair[pair as usize].clone();
        for idx in candidates {
            if self.try_extend(idx) {
                self.dfs();
                self.retract(idx);
            }
            if self.truncated {
                return;
            }
        }
        self.skipped |= 1u128 << pair;
        self.dfs();
        self.skipped &= !(1u128 << pair);
    }

    /// Pushes catalog edge `idx` if it keeps the graph linear (no decided
    /// pair reused) and pattern-free; returns whether it was accepted.
    fn try_extend(&mut self, idx: usize) -> bool {
        let cand = &self.ctx.catalog[idx];
        if cand.pair_mask & (self.covered | self.skipped) != 0 {
            return false;
        }
        self.covered |= cand.pair_mask;
        self.host.edges.push(cand.vertices.clone());
        self.stack.push(idx);
        let new_id = self.host.edges.len() - 1;
        if patterns::free_with_new_edge(&self.host, self.ctx.patterns, new_id) {
            true
        } else {
            self.retract(idx);
            false
        }
    }

    fn retract(&mut self, idx: usize) {
        self.covered &= !self.ctx.catalog[idx].pair_mask;
        self.host.edges.pop();
        self.stack.pop();
    }

    /// Frontier expansion: performs one visit and collects the children as
    /// suspended states instead of recursing.
    fn expand(&mut self, out: &mut Vec<NodeState>) {
        let pair = match self.visit() {
            Visit::Closed => return,
            Visit::Branch(p) => p,
        };
        let candidates = self.ctx.by_least_pair[pair as usize].clone();
        for idx in candidates {
            if self.try_extend(idx) {
                out.push(NodeState {
                    covered: self.covered,
                    skipped: self.skipped,
                    stack: self.stack.clone(),
                });
                self.retract(idx);
            }
            if self.truncated {
                return;
            }
        }
        out.push(NodeState {
            covered: self.covered,
            skipped: self.skipped | (1u128 << pair),
            stack: self.stack.clone(),
        });
    }
}

fn low_mask(bits: u32) -> u128 {
    if bits >= 128 {
        u128::MAX
    } else {
        (1u128 << bits) - 1
    }
}

fn run_parallel(ctx: &Context<'_>) -> Outcome {
    // Grow a frontier of suspended nodes breadth-first until there is enough
    // to saturate the pool, then let each branch run its own depth-first
    // walk. The shared best-so-far is a monotone lower bound, so pruning is
    // admissible under any interleaving.
    let target = rayon::current_num_threads().max(1) * 16;
    let mut merged = Outcome {
        best_size: 0,
        best_stack: Vec::new(),
        nodes: 0,
        truncated: false,
    };
    let mut frontier = std::collections::VecDeque::new();
    frontier.push_back(NodeState {
        covered: 0,
        skipped: 0,
        stack: Vec::new(),
    });
    while frontier.len() < target {
        let Some(state) = frontier.pop_front() else {
            break;
        };
        let mut worker = Worker::restore(ctx, &state);
        let mut children = Vec::new();
        worker.expand(&mut children);
        let partial = worker.into_outcome();
        absorb(&mut merged, partial);
        frontier.extend(children);
    }
    let branches: Vec<Outcome> = frontier
        .par_iter()
        .map(|state| {
            let mut worker = Worker::restore(ctx, state);
            worker.dfs();
            worker.into_outcome()
        })
        .collect();
    for b in branches {
        absorb(&mut merged, b);
    }
    merged
}

/// Merges a branch outcome; equal sizes break ties toward the
/// lexicographically smaller witness so the reduction itself is order-free.
fn absorb(merged: &mut Outcome, b: Outcome) {
    merged.nodes += b.nodes;
    merged.truncated |= b.truncated;
    let better = b.best_size > merged.best_size
        || (b.best_size == merged.best_size
            && b.best_size > 0
            && (merged.best_stack.is_empty() || b.best_stack < merged.best_stack));
    if better {
        merged.best_size = b.best_size;
        merged.best_stack = b.best_stack;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{check_twzz, grs_lower_bound, grs_upper_bound};
    use crate::patterns::is_free;

    fn assert_valid_result(res: &SearchResult, cfg: &SearchConfig) {
        assert!(res.witness.validate().is_empty());
        assert_eq!(res.witness.n(), cfg.n);
        assert_eq!(res.witness.r(), cfg.r);
        assert_eq!(res.witness.edge_count(), res.max_edges);
        assert!(is_free(&res.witness, &cfg.patterns).unwrap().is_free());
    }

    #[test]
    fn single_full_edge() {
        let cfg = SearchConfig::new(3, 3).with_patterns(vec![Pattern::crown(3).unwrap()]);
        let res = exact_turan(&cfg).unwrap();
        assert_eq!(res.max_edges, 1);
        assert!(res.exact);
        assert_valid_result(&res, &cfg);
    }

    #[test]
    fn packing_sizes_for_small_n() {
        // The maximum partial triple system sizes on 3..=9 points.
        for (n, expected) in [(3, 1), (4, 1), (5, 2), (6, 4), (7, 7), (8, 8), (9, 12)] {
            let res = max_linear(n, 3).unwrap();
            assert_eq!(res.max_edges, expected, "n = {n}");
            assert!(res.exact);
        }
    }

    #[test]
    fn fano_is_found() {
        let res = max_linear(7, 3).unwrap();
        assert_eq!(res.max_edges, 7);
        // Every pair covered: the witness is a Steiner triple system.
        let g = &res.witness;
        for u in 0..7 {
            for v in u + 1..7 {
                assert!(g.edge_containing_pair(u, v).is_some());
            }
        }
    }

    #[test]
    fn crown_is_irrelevant_below_nine_vertices() {
        let crown = Pattern::crown(3).unwrap();
        for n in [7, 8] {
            let free = exact_turan(
                &SearchConfig::new(n, 3).with_patterns(vec![crown.clone()]),
            )
            .unwrap();
            let unconstrained = max_linear(n, 3).unwrap();
            assert_eq!(free.max_edges, unconstrained.max_edges, "n = {n}");
        }
    }

    #[test]
    fn sandwich_bounds_at_seven() {
        let cfg = SearchConfig::new(7, 3).with_patterns(vec![Pattern::crown(3).unwrap()]);
        let res = exact_turan(&cfg).unwrap();
        assert!(res.exact);
        assert!(grs_lower_bound(7).unwrap() <= res.max_edges);
        assert!(res.max_edges <= grs_upper_bound(7));
        assert_valid_result(&res, &cfg);
        let rep = check_twzz(&res.witness, false).unwrap();
        assert!(rep.satisfied);
    }

    #[test]
    fn extra_patterns_never_help() {
        let crown = Pattern::crown(3).unwrap();
        let base = max_linear(8, 3).unwrap().max_edges;
        let restricted = exact_turan(
            &SearchConfig::new(8, 3).with_patterns(vec![crown.clone()]),
        )
        .unwrap()
        .max_edges;
        assert!(restricted <= base);

        let mut two_disjoint = LinearHypergraph::new_empty(6, 3).unwrap();
        two_disjoint.add_edge(&[0, 1, 2]).unwrap();
        two_disjoint.add_edge(&[3, 4, 5]).unwrap();
        let matching_free = exact_turan(
            &SearchConfig::new(8, 3)
                .with_patterns(vec![crown, Pattern::custom(two_disjoint).unwrap()]),
        )
        .unwrap();
        assert!(matching_free.max_edges <= restricted);
        // Pairwise-intersecting linear triples on 8 points: the Fano plane.
        assert_eq!(matching_free.max_edges, 7);
    }

    #[test]
    fn more_vertices_never_hurt() {
        let crown = Pattern::crown(3).unwrap();
        let mut prev = 0;
        for n in 3..=8 {
            let res = exact_turan(
                &SearchConfig::new(n, 3).with_patterns(vec![crown.clone()]),
            )
            .unwrap();
            assert!(res.max_edges >= prev);
            prev = res.max_edges;
        }
    }

    #[test]
    fn sequential_runs_are_reproducible() {
        let cfg = SearchConfig::new(7, 3).with_patterns(vec![Pattern::crown(3).unwrap()]);
        let a = exact_turan(&cfg).unwrap();
        let b = exact_turan(&cfg).unwrap();
        assert_eq!(a.nodes_explored, b.nodes_explored);
        assert_eq!(a.witness.to_lhg_text(), b.witness.to_lhg_text());
    }

    #[test]
    fn parallel_agrees_on_the_optimum() {
        let mut cfg = SearchConfig::new(8, 3).with_patterns(vec![Pattern::crown(3).unwrap()]);
        let seq = exact_turan(&cfg).unwrap();
        cfg.parallel = true;
        let par = exact_turan(&cfg).unwrap();
        assert_eq!(par.max_edges, seq.max_edges);
        assert!(par.exact);
        assert_valid_result(&par, &cfg);
    }

    #[test]
    fn edge_budget_truncates() {
        let mut cfg = SearchConfig::new(9, 3);
        cfg.edge_budget = Some(3);
        let res = exact_turan(&cfg).unwrap();
        assert_eq!(res.max_edges, 3);
        assert!(!res.exact);
        assert_valid_result(&res, &cfg);
    }

    #[test]
    fn time_budget_truncates() {
        let mut cfg = SearchConfig::new(10, 3);
        cfg.time_budget = Some(Duration::from_millis(0));
        let res = exact_turan(&cfg).unwrap();
        assert!(!res.exact);
    }

    #[test]
    fn config_errors() {
        assert_eq!(
            exact_turan(&SearchConfig::new(2, 3)).unwrap_err(),
            SearchError::TooFewVertices { n: 2, r: 3 }
        );
        assert_eq!(
            exact_turan(&SearchConfig::new(17, 3)).unwrap_err(),
            SearchError::TooManyVertices(17)
        );
        assert_eq!(
            exact_turan(&SearchConfig::new(9, 1)).unwrap_err(),
            SearchError::InvalidUniformity(1)
        );
        let cfg = SearchConfig::new(9, 3).with_patterns(vec![Pattern::crown(4).unwrap()]);
        assert_eq!(
            exact_turan(&cfg).unwrap_err(),
            SearchError::UniformityMismatch { r: 3, pattern: 4 }
        );
    }
}
