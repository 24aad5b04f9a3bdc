//! Forbidden configurations and subhypergraph embedding.
//!
//! Two pattern families are built in. For uniformity r, the *crown* consists
//! of r pairwise disjoint edges plus one edge meeting each of them in exactly
//! one vertex (r^2 vertices, r+1 edges). Its companion consists of r-2 edges
//! through a common hub vertex, two further edges disjoint from everything,
//! and one spine edge meeting each of the r edges in one vertex while
//! avoiding the hub (r^2-r+3 vertices, r+1 edges). For r = 3 the two are
//! isomorphic.
//!
//! Detection is generic backtracking over pattern edges in a
//! connectivity-first order; [`oracle_contains`] is a deliberately dumb
//! subset-and-bijection enumeration kept as an independent cross-check.

use crate::hypergraph::LinearHypergraph;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern uniformity {pattern} does not match host uniformity {host}")]
    UniformityMismatch { host: usize, pattern: usize },
    #[error("pattern requires uniformity at least 3, got {0}")]
    InvalidUniformity(usize),
    #[error("custom pattern graph fails validation: {0}")]
    InvalidGraph(String),
}

/// Which family a pattern belongs to; `Custom` for anything user-supplied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternKind {
    Crown,
    CStar,
    Custom,
}

impl PatternKind {
    pub fn name(self) -> &'static str {
        match self {
            PatternKind::Crown => "crown",
            PatternKind::CStar => "cstar",
            PatternKind::Custom => "custom",
        }
    }
}

/// A small linear r-graph used as a forbidden configuration.
///
/// Construction precomputes the vertex degrees and the edge placement
/// orders the detector uses, so hot search loops pay for them once.
#[derive(Debug, Clone)]
pub struct Pattern {
    graph: LinearHypergraph,
    kind: PatternKind,
    vertex_degrees: Vec<usize>,
    default_order: Vec<usize>,
    /// `pinned_orders[j]` starts the placement at pattern edge j.
    pinned_orders: Vec<Vec<usize>>,
}

impl Pattern {
    /// The crown for uniformity `r >= 3`: disjoint edges `{ir..ir+r-1}` for
    /// each `i`, then the transversal edge `{0, r, 2r, ...}`.
    pub fn crown(r: usize) -> Result<Pattern, PatternError> {
        if r < 3 {
            return Err(PatternError::InvalidUniformity(r));
        }
        let mut g = LinearHypergraph::new_empty(r * r, r).expect("r >= 3");
        for i in 0..r {
            let edge: Vec<usize> = (i * r..(i + 1) * r).collect();
            g.add_edge(&edge).expect("disjoint edges are linear");
        }
        let anchor: Vec<usize> = (0..r).map(|i| i * r).collect();
        g.add_edge(&anchor).expect("anchor meets each edge once");
        debug_assert!(g.validate().is_empty());
        Ok(Pattern::finish(g, PatternKind::Crown))
    }

    /// The companion configuration for `r >= 3`: r-2 edges through hub 0,
    /// two edges disjoint from everything, and a spine meeting all r edges
    /// in one vertex each while avoiding the hub.
    pub fn cstar(r: usize) -> Result<Pattern, PatternError> {
        if r < 3 {
            return Err(PatternError::InvalidUniformity(r));
        }
        let n = r * r - r + 3;
        let mut g = LinearHypergraph::new_empty(n, r).expect("r >= 3");
        for i in 0..r - 2 {
            let mut edge = vec![0];
            edge.extend(1 + i * (r - 1)..1 + (i + 1) * (r - 1));
            g.add_edge(&edge).expect("hub edges share only the hub");
        }
        let base = 1 + (r - 2) * (r - 1);
        let far_a: Vec<usize> = (base..base + r).collect();
        let far_b: Vec<usize> = (base + r..base + 2 * r).collect();
        g.add_edge(&far_a).expect("disjoint edge");
        g.add_edge(&far_b).expect("disjoint edge");
        let mut spine: Vec<usize> = (0..r - 2).map(|i| 1 + i * (r - 1)).collect();
        spine.push(base);
        spine.push(base + r);
        g.add_edge(&spine).expect("spine meets each edge once");
        debug_assert!(g.validate().is_empty());
        Ok(Pattern::finish(g, PatternKind::CStar))
    }

    /// Wraps an arbitrary validated linear graph as a pattern.
    pub fn custom(graph: LinearHypergraph) -> Result<Pattern, PatternError> {
        let violations = graph.validate();
        if let Some(v) = violations.first() {
            return Err(PatternError::InvalidGraph(v.to_string()));
        }
        Ok(Pattern::finish(graph, PatternKind::Custom))
    }

    fn finish(graph: LinearHypergraph, kind: PatternKind) -> Pattern {
        let mut vertex_degrees = vec![0usize; graph.n()];
        for e in graph.edges() {
            for &v in e.vertices() {
                vertex_degrees[v] += 1;
            }
        }
        let default_order = placement_order(&graph, None);
        let pinned_orders = (0..graph.edge_count())
            .map(|j| placement_order(&graph, Some(j)))
            .collect();
        Pattern {
            graph,
            kind,
            vertex_degrees,
            default_order,
            pinned_orders,
        }
    }

    pub fn graph(&self) -> &LinearHypergraph {
        &self.graph
    }

    pub fn kind(&self) -> PatternKind {
        self.kind
    }
}

/// A certified copy of a pattern inside a host: injective vertex and edge
/// maps under which every pattern edge lands exactly on its image edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    /// `vertex_map[p]` is the host vertex for pattern vertex `p`.
    pub vertex_map: Vec<usize>,
    /// `edge_map[f]` is the host edge id for pattern edge `f`.
    pub edge_map: Vec<usize>,
}

impl Embedding {
    /// Re-checks the certificate from raw data, independently of the search
    /// that produced it.
    pub fn verify(&self, host: &LinearHypergraph, pattern: &Pattern) -> Result<(), String> {
        let pg = pattern.graph();
        if self.vertex_map.len() != pg.n() {
            return Err("vertex map has wrong length".into());
        }
        if self.edge_map.len() != pg.edge_count() {
            return Err("edge map has wrong length".into());
        }
        let mut seen_v = std::collections::HashSet::new();
        for &w in &self.vertex_map {
            if w >= host.n() {
                return Err(format!("host vertex {w} out of range"));
            }
            if !seen_v.insert(w) {
                return Err(format!("host vertex {w} used twice"));
            }
        }
        let mut seen_e = std::collections::HashSet::new();
        for &h in &self.edge_map {
            if h >= host.edge_count() {
                return Err(format!("host edge {h} out of range"));
            }
            if !seen_e.insert(h) {
                return Err(format!("host edge {h} used twice"));
            }
        }
        for (f, pe) in pg.edges().iter().enumerate() {
            let mut image: Vec<usize> = pe.vertices().iter().map(|&v| self.vertex_map[v]).collect();
            image.sort_unstable();
            if image != host.edge(self.edge_map[f]).vertices() {
                return Err(format!("pattern edge {f} does not land on its image"));
            }
        }
        Ok(())
    }
}

/// Outcome of a freeness check against a pattern list.
#[derive(Debug, Clone)]
pub enum Freeness {
    Free,
    Contains {
        /// Index into the pattern list that was matched first.
        pattern: usize,
        embedding: Embedding,
    },
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        matches!(self, Freeness::Free)
    }
}

/// Searches for a copy of `pattern` in `host`. Deterministic: host edges are
/// tried in ascending id order and vertex assignments in ascending order.
pub fn find_embedding(
    host: &LinearHypergraph,
    pattern: &Pattern,
) -> Result<Option<Embedding>, PatternError> {
    check_uniformity(host, pattern)?;
    Ok(match_pattern(&GraphView(host), pattern))
}

/// Like [`find_embedding`] but only reports copies whose edge map uses the
/// given host edge. When a host grows one edge at a time, checking the new
/// edge alone is equivalent to re-checking the whole graph.
pub fn find_embedding_using_edge(
    host: &LinearHypergraph,
    pattern: &Pattern,
    host_edge: usize,
) -> Result<Option<Embedding>, PatternError> {
    check_uniformity(host, pattern)?;
    let view = GraphView(host);
    Ok(find_using_edge_in(&view, pattern, host_edge))
}

/// True (with no witness) iff the host contains none of the patterns;
/// otherwise the first witness found in pattern-list order.
pub fn is_free(host: &LinearHypergraph, patterns: &[Pattern]) -> Result<Freeness, PatternError> {
    for (i, p) in patterns.iter().enumerate() {
        if let Some(embedding) = find_embedding(host, p)? {
            debug_assert!(embedding.verify(host, p).is_ok());
            return Ok(Freeness::Contains {
                pattern: i,
                embedding,
            });
        }
    }
    Ok(Freeness::Free)
}

/// Brute-force containment oracle: every subset of host edges of the right
/// size, every bijection onto the pattern edges, and a plain consistency
/// search for the vertex map. Independent of the backtracking engine; meant
/// for hosts with at most ~16 edges.
pub fn oracle_contains(host: &LinearHypergraph, pattern: &Pattern) -> Result<bool, PatternError> {
    check_uniformity(host, pattern)?;
    let pg = pattern.graph();
    let k = pg.edge_count();
    if host.edge_count() < k {
        return Ok(false);
    }
    let ids: Vec<usize> = (0..host.edge_count()).collect();
    for subset in combinations(&ids, k) {
        for assignment in permutations(&subset) {
            // assignment[f] = host edge chosen for pattern edge f.
            let mut vmap = vec![usize::MAX; pg.n()];
            let mut used = vec![false; host.n()];
            if oracle_extend(host, pg, &assignment, 0, &mut vmap, &mut used) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn oracle_extend(
    host: &LinearHypergraph,
    pg: &LinearHypergraph,
    assignment: &[usize],
    f: usize,
    vmap: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if f == assignment.len() {
        return true;
    }
    let pverts = pg.edge(f).vertices();
    let hverts = host.edge(assignment[f]).vertices();
    // Already-mapped pattern vertices must land inside the host edge; the
    // rest biject onto its unused vertices.
    let mut free_p = Vec::new();
    for &u in pverts {
        if vmap[u] != usize::MAX {
            if !hverts.contains(&vmap[u]) {
                return false;
            }
        } else {
            free_p.push(u);
        }
    }
    let mut free_h = Vec::new();
    for &w in hverts {
        let accounted = pverts.iter().any(|&u| vmap[u] == w);
        if !accounted {
            if used[w] {
                return false;
            }
            free_h.push(w);
        }
    }
    if free_p.len() != free_h.len() {
        return false;
    }
    oracle_bijections(host, pg, assignment, f, &free_p, &free_h, 0, vmap, used)
}

#[allow(clippy::too_many_arguments)]
fn oracle_bijections(
    host: &LinearHypergraph,
    pg: &LinearHypergraph,
    assignment: &[usize],
    f: usize,
    free_p: &[usize],
    free_h: &[usize],
    i: usize,
    vmap: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if i == free_p.len() {
        return oracle_extend(host, pg, assignment, f + 1, vmap, used);
    }
    let u = free_p[i];
    for &w in free_h {
        if used[w] {
            continue;
        }
        vmap[u] = w;
        used[w] = true;
        if oracle_bijections(host, pg, assignment, f, free_p, free_h, i + 1, vmap, used) {
            return true;
        }
        vmap[u] = usize::MAX;
        used[w] = false;
    }
    false
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = items.to_vec();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    if cur.is_empty() {
        out.push(Vec::new());
    } else {
        heap(cur.len(), &mut cur, &mut out);
    }
    out
}

fn check_uniformity(host: &LinearHypergraph, pattern: &Pattern) -> Result<(), PatternError> {
    if host.r() != pattern.graph().r() {
        return Err(PatternError::UniformityMismatch {
            host: host.r(),
            pattern: pattern.graph().r(),
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Backtracking engine
// ---------------------------------------------------------------------------

/// Minimal host access needed by the engine; lets the exhaustive search run
/// detection on its own compact state without building a full graph per node.
pub(crate) trait HostView {
    fn vertex_count(&self) -> usize;
    fn edge_count(&self) -> usize;
    fn edge_vertices(&self, id: usize) -> &[usize];
}

pub(crate) struct GraphView<'a>(pub &'a LinearHypergraph);

impl HostView for GraphView<'_> {
    fn vertex_count(&self) -> usize {
        self.0.n()
    }
    fn edge_count(&self) -> usize {
        self.0.edge_count()
    }
    fn edge_vertices(&self, id: usize) -> &[usize] {
        self.0.edge(id).vertices()
    }
}

/// Host degrees and incidence lists, built once per host and shared across
/// patterns and anchor positions.
pub(crate) struct HostIndex {
    degrees: Vec<usize>,
    inc_flat: Vec<usize>,
    inc_start: Vec<usize>,
}

impl HostIndex {
    pub(crate) fn build<H: HostView>(host: &H) -> HostIndex {
        let n = host.vertex_count();
        let m = host.edge_count();
        let mut degrees = vec![0usize; n];
        for id in 0..m {
            for &v in host.edge_vertices(id) {
                degrees[v] += 1;
            }
        }
        let mut inc_start = vec![0usize; n + 1];
        for v in 0..n {
            inc_start[v + 1] = inc_start[v] + degrees[v];
        }
        let mut cursor = inc_start.clone();
        let mut inc_flat = vec![0usize; inc_start[n]];
        for id in 0..m {
            for &v in host.edge_vertices(id) {
                inc_flat[cursor[v]] = id;
                cursor[v] += 1;
            }
        }
        HostIndex {
            degrees,
            inc_flat,
            inc_start,
        }
    }

    fn edges_through(&self, v: usize) -> &[usize] {
        &self.inc_flat[self.inc_start[v]..self.inc_start[v + 1]]
    }
}

/// Immutable inputs of one matching run.
struct MatchCtx<'a, H: HostView> {
    host: &'a H,
    index: &'a HostIndex,
    pattern: &'a Pattern,
    /// Pattern edge ids in placement order.
    order: &'a [usize],
    /// Host edge the first placement is pinned to, if any.
    pinned: Option<usize>,
}

/// Mutable search state, reusable across runs after [`reset`](Self::reset).
struct MatchState {
    vmap: Vec<usize>,
    vused: Vec<bool>,
    emap: Vec<usize>,
    eused: Vec<bool>,
}

impl MatchState {
    fn new<H: HostView>(host: &H, pattern: &Pattern) -> MatchState {
        MatchState {
            vmap: vec![usize::MAX; pattern.graph.n()],
            vused: vec![false; host.vertex_count()],
            emap: vec![usize::MAX; pattern.graph.edge_count()],
            eused: vec![false; host.edge_count()],
        }
    }

    fn reset(&mut self) {
        self.vmap.fill(usize::MAX);
        self.vused.fill(false);
        self.emap.fill(usize::MAX);
        self.eused.fill(false);
    }
}

/// Full search with the pattern's default placement order.
fn match_pattern<H: HostView>(host: &H, pattern: &Pattern) -> Option<Embedding> {
    if host.edge_count() < pattern.graph.edge_count() {
        return None;
    }
    let index = HostIndex::build(host);
    let mut state = MatchState::new(host, pattern);
    let ctx = MatchCtx {
        host,
        index: &index,
        pattern,
        order: &pattern.default_order,
        pinned: None,
    };
    if place(&ctx, &mut state, 0) {
        Some(Embedding {
            vertex_map: state.vmap,
            edge_map: state.emap,
        })
    } else {
        None
    }
}

/// Anchored detection against any host view; used by the exhaustive search
/// where every new copy must involve the freshly added edge. Tries the host
/// edge in every pattern-edge role.
pub(crate) fn find_using_edge_in<H: HostView>(
    host: &H,
    pattern: &Pattern,
    host_edge: usize,
) -> Option<Embedding> {
    let index = HostIndex::build(host);
    find_anchored(host, &index, pattern, host_edge)
}

/// Whether adding `new_edge` kept the host free of every pattern; shares one
/// host index across all patterns and anchor roles.
pub(crate) fn free_with_new_edge<H: HostView>(
    host: &H,
    patterns: &[Pattern],
    new_edge: usize,
) -> bool {
    if patterns.is_empty() {
        return true;
    }
    let index = HostIndex::build(host);
    patterns
        .iter()
        .all(|p| find_anchored(host, &index, p, new_edge).is_none())
}

fn find_anchored<H: HostView>(
    host: &H,
    index: &HostIndex,
    pattern: &Pattern,
    host_edge: usize,
) -> Option<Embedding> {
    if host.edge_count() < pattern.graph.edge_count() {
        return None;
    }
    let mut state = MatchState::new(host, pattern);
    for j in 0..pattern.graph.edge_count() {
        state.reset();
        let ctx = MatchCtx {
            host,
            index,
            pattern,
            order: &pattern.pinned_orders[j],
            pinned: Some(host_edge),
        };
        if place(&ctx, &mut state, 0) {
            return Some(Embedding {
                vertex_map: state.vmap,
                edge_map: state.emap,
            });
        }
    }
    None
}

fn place<H: HostView>(ctx: &MatchCtx<'_, H>, st: &mut MatchState, depth: usize) -> bool {
    if depth == ctx.order.len() {
        return true;
    }
    let f = ctx.order[depth];
    if depth == 0 {
        if let Some(h) = ctx.pinned {
            return try_edge(ctx, st, depth, f, h);
        }
    }
    // Candidates: edges through an already-mapped vertex of f when one
    // exists (the placement order makes this the common case), otherwise
    // every unused host edge. Ascending ids either way.
    let mapped = ctx
        .pattern
        .graph
        .edge(f)
        .vertices()
        .iter()
        .find(|&&u| st.vmap[u] != usize::MAX)
        .copied();
    match mapped {
        Some(u) => {
            for i in ctx.index.inc_start[st.vmap[u]]..ctx.index.inc_start[st.vmap[u] + 1] {
                let h = ctx.index.inc_flat[i];
                if !st.eused[h] && try_edge(ctx, st, depth, f, h) {
                    return true;
                }
            }
        }
        None => {
            for h in 0..ctx.host.edge_count() {
                if !st.eused[h] && try_edge(ctx, st, depth, f, h) {
                    return true;
                }
            }
        }
    }
    false
}

/// Attempts to map pattern edge `f` onto host edge `h`, enumerating all
/// assignments of its unmapped vertices, and recurses deeper on success.
fn try_edge<H: HostView>(
    ctx: &MatchCtx<'_, H>,
    st: &mut MatchState,
    depth: usize,
    f: usize,
    h: usize,
) -> bool {
    let pverts = ctx.pattern.graph.edge(f).vertices();
    let hverts = ctx.host.edge_vertices(h);
    // Cheap rejects before anything is allocated: mapped pattern vertices
    // must land inside h, and h must not contain foreign used vertices.
    for &u in pverts {
        let w = st.vmap[u];
        if w != usize::MAX && !hverts.contains(&w) {
            return false;
        }
    }
    for &w in hverts {
        if st.vused[w] && !pverts.iter().any(|&u| st.vmap[u] == w) {
            return false;
        }
    }
    let free_p: Vec<usize> = pverts
        .iter()
        .copied()
        .filter(|&u| st.vmap[u] == usize::MAX)
        .collect();
    let free_h: Vec<usize> = hverts
        .iter()
        .copied()
        .filter(|&w| !st.vused[w])
        .collect();
    if free_p.len() != free_h.len() {
        return false;
    }
    st.emap[f] = h;
    st.eused[h] = true;
    let ok = assign(ctx, st, depth, &free_p, &free_h, 0);
    if !ok {
        st.emap[f] = usize::MAX;
        st.eused[h] = false;
    }
    ok
}

fn assign<H: HostView>(
    ctx: &MatchCtx<'_, H>,
    st: &mut MatchState,
    depth: usize,
    free_p: &[usize],
    free_h: &[usize],
    i: usize,
) -> bool {
    if i == free_p.len() {
        return place(ctx, st, depth + 1);
    }
    let u = free_p[i];
    for &w in free_h {
        // A pattern vertex of degree d needs a host vertex of degree at
        // least d; pure pruning, cannot affect the answer.
        if st.vused[w] || ctx.index.degrees[w] < ctx.pattern.vertex_degrees[u] {
            continue;
        }
        st.vmap[u] = w;
        st.vused[w] = true;
        if assign(ctx, st, depth, free_p, free_h, i + 1) {
            return true;
        }
        st.vmap[u] = usize::MAX;
        st.vused[w] = false;
    }
    false
}

/// Static placement order: the spine (the edge intersecting the most other
/// edges) first, then repeatedly the edge sharing the most vertices with
/// everything already placed; ties break on the lower edge id.
fn placement_order(pg: &LinearHypergraph, first: Option<usize>) -> Vec<usize> {
    let m = pg.edge_count();
    if m == 0 {
        return Vec::new();
    }
    let start = first.unwrap_or_else(|| {
        (0..m)
            .max_by_key(|&i| {
                let count = (0..m)
                    .filter(|&j| j != i && pg.edge(i).intersection_size(pg.edge(j)) > 0)
                    .count();
                (count, std::cmp::Reverse(i))
            })
            .unwrap()
    });
    let mut order = vec![start];
    let mut placed_vertices: Vec<bool> = vec![false; pg.n()];
    for &v in pg.edge(start).vertices() {
        placed_vertices[v] = true;
    }
    let mut remaining: Vec<usize> = (0..m).filter(|&i| i != start).collect();
    while !remaining.is_empty() {
        let (pos, &next) = remaining
            .iter()
            .enumerate()
            .max_by_key(|(_, &i)| {
                let overlap = pg
                    .edge(i)
                    .vertices()
                    .iter()
                    .filter(|&&v| placed_vertices[v])
                    .count();
                (overlap, std::cmp::Reverse(i))
            })
            .unwrap();
        order.push(next);
        for &v in pg.edge(next).vertices() {
            placed_vertices[v] = true;
        }
        remaining.remove(pos);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crown_counts_and_validity() {
        for r in 3..=8 {
            let p = Pattern::crown(r).unwrap();
            assert_eq!(p.graph().n(), r * r);
            assert_eq!(p.graph().edge_count(), r + 1);
            assert!(p.graph().validate().is_empty());
        }
        assert_eq!(
            Pattern::crown(2).unwrap_err(),
            PatternError::InvalidUniformity(2)
        );
    }

    #[test]
    fn cstar_counts_and_validity() {
        for r in 3..=8 {
            let p = Pattern::cstar(r).unwrap();
            assert_eq!(p.graph().n(), r * r - r + 3);
            assert_eq!(p.graph().edge_count(), r + 1);
            assert!(p.graph().validate().is_empty());
        }
        assert_eq!(
            Pattern::cstar(2).unwrap_err(),
            PatternError::InvalidUniformity(2)
        );
    }

    #[test]
    fn crown_disjoint_edges_stay_disjoint() {
        let p = Pattern::crown(5).unwrap();
        let g = p.graph();
        assert_eq!(g.n(), 25);
        assert_eq!(g.edge_count(), 6);
        for i in 0..5 {
            for j in i + 1..5 {
                assert_eq!(g.edge(i).intersection_size(g.edge(j)), 0);
            }
        }
    }

    #[test]
    fn cstar_hub_degree_is_r_minus_two() {
        let p = Pattern::cstar(4).unwrap();
        let g = p.graph();
        assert_eq!(g.n(), 15);
        // Count hub incidences directly off the edge list.
        let hub_edges = g.edges().iter().filter(|e| e.contains(0)).count();
        assert_eq!(hub_edges, 2);
        assert_eq!(g.degree(0), 2);
    }

    #[test]
    fn crown_embeds_in_itself() {
        let p = Pattern::crown(3).unwrap();
        let host = p.graph().clone();
        let emb = find_embedding(&host, &p).unwrap().expect("identity copy");
        emb.verify(&host, &p).unwrap();
    }

    #[test]
    fn too_few_host_edges_is_fast_negative() {
        let p = Pattern::crown(4).unwrap();
        let mut host = LinearHypergraph::new_empty(20, 4).unwrap();
        host.add_edge(&[0, 1, 2, 3]).unwrap();
        host.add_edge(&[0, 4, 5, 6]).unwrap();
        assert!(find_embedding(&host, &p).unwrap().is_none());
    }

    #[test]
    fn uniformity_mismatch_is_an_error() {
        let p = Pattern::crown(4).unwrap();
        let host = LinearHypergraph::new_empty(9, 3).unwrap();
        assert_eq!(
            find_embedding(&host, &p).unwrap_err(),
            PatternError::UniformityMismatch { host: 3, pattern: 4 }
        );
    }

    #[test]
    fn empty_graph_is_free_of_everything() {
        let host = LinearHypergraph::new_empty(30, 3).unwrap();
        let pats = [Pattern::crown(3).unwrap(), Pattern::cstar(3).unwrap()];
        assert!(is_free(&host, &pats).unwrap().is_free());
    }

    #[test]
    fn crown_host_is_not_crown_free() {
        let p = Pattern::crown(3).unwrap();
        let host = p.graph().clone();
        match is_free(&host, std::slice::from_ref(&p)).unwrap() {
            Freeness::Contains { pattern, embedding } => {
                assert_eq!(pattern, 0);
                embedding.verify(&host, &p).unwrap();
            }
            Freeness::Free => panic!("crown must contain itself"),
        }
    }

    #[test]
    fn crown_and_cstar_mutually_embed_for_r3() {
        let crown = Pattern::crown(3).unwrap();
        let cstar = Pattern::cstar(3).unwrap();
        let in_crown = find_embedding(crown.graph(), &cstar)
            .unwrap()
            .expect("cstar(3) inside crown(3)");
        in_crown.verify(crown.graph(), &cstar).unwrap();
        let in_cstar = find_embedding(cstar.graph(), &crown)
            .unwrap()
            .expect("crown(3) inside cstar(3)");
        in_cstar.verify(cstar.graph(), &crown).unwrap();
    }

    #[test]
    fn extension_preserves_containment() {
        let p = Pattern::crown(3).unwrap();
        let mut host = p.graph().clone();
        assert!(find_embedding(&host, &p).unwrap().is_some());
        host.add_edge(&[1, 4, 7]).unwrap();
        host.add_edge(&[2, 5, 8]).unwrap();
        let emb = find_embedding(&host, &p).unwrap().expect("still contained");
        emb.verify(&host, &p).unwrap();
    }

    #[test]
    fn anchored_search_matches_full_search() {
        let p = Pattern::crown(3).unwrap();
        let mut host = LinearHypergraph::new_empty(9, 3).unwrap();
        host.add_edge(&[0, 1, 2]).unwrap();
        host.add_edge(&[3, 4, 5]).unwrap();
        host.add_edge(&[6, 7, 8]).unwrap();
        // No copy yet, and none using any edge so far.
        for id in 0..host.edge_count() {
            assert!(find_embedding_using_edge(&host, &p, id).unwrap().is_none());
        }
        let last = host.add_edge(&[0, 3, 6]).unwrap();
        let emb = find_embedding_using_edge(&host, &p, last)
            .unwrap()
            .expect("new edge completes the crown");
        emb.verify(&host, &p).unwrap();
        assert!(emb.edge_map.contains(&last));
    }

    #[test]
    fn disconnected_custom_pattern() {
        let mut pg = LinearHypergraph::new_empty(6, 3).unwrap();
        pg.add_edge(&[0, 1, 2]).unwrap();
        pg.add_edge(&[3, 4, 5]).unwrap();
        let p = Pattern::custom(pg).unwrap();
        assert_eq!(p.kind().name(), "custom");

        let mut disjoint = LinearHypergraph::new_empty(7, 3).unwrap();
        disjoint.add_edge(&[0, 1, 2]).unwrap();
        disjoint.add_edge(&[4, 5, 6]).unwrap();
        assert!(find_embedding(&disjoint, &p).unwrap().is_some());

        let mut touching = LinearHypergraph::new_empty(5, 3).unwrap();
        touching.add_edge(&[0, 1, 2]).unwrap();
        touching.add_edge(&[0, 3, 4]).unwrap();
        assert!(find_embedding(&touching, &p).unwrap().is_none());
    }

    #[test]
    fn custom_pattern_rejects_invalid_graph() {
        let bad = LinearHypergraph::from_parts_unchecked(4, 3, vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert!(matches!(
            Pattern::custom(bad),
            Err(PatternError::InvalidGraph(_))
        ));
    }

    #[test]
    fn oracle_agrees_on_small_hosts() {
        let crown = Pattern::crown(3).unwrap();
        let cstar = Pattern::cstar(3).unwrap();

        let host = crown.graph().clone();
        assert!(oracle_contains(&host, &crown).unwrap());
        assert!(find_embedding(&host, &crown).unwrap().is_some());

        let mut no_copy = LinearHypergraph::new_empty(9, 3).unwrap();
        no_copy.add_edge(&[0, 1, 2]).unwrap();
        no_copy.add_edge(&[3, 4, 5]).unwrap();
        no_copy.add_edge(&[6, 7, 8]).unwrap();
        for p in [&crown, &cstar] {
            assert!(!oracle_contains(&no_copy, p).unwrap());
            assert!(find_embedding(&no_copy, p).unwrap().is_none());
        }
    }

    #[test]
    fn oracle_differential_on_seeded_hosts() {
        let mut disagreements = Vec::new();
        for r in [3usize, 4] {
            let crown = Pattern::crown(r).unwrap();
            let cstar = Pattern::cstar(r).unwrap();
            for seed in 0..30u64 {
                let host = crate::random::random_linear_graph(12, r, 8, 0xC0FFEE + seed);
                for p in [&crown, &cstar] {
                    let fast = find_embedding(&host, p).unwrap();
                    if let Some(emb) = &fast {
                        emb.verify(&host, p).unwrap();
                    }
                    let slow = oracle_contains(&host, p).unwrap();
                    if fast.is_some() != slow {
                        disagreements.push((r, seed, p.kind().name()));
                    }
                }
            }
        }
        assert!(disagreements.is_empty(), "disagreements: {disagreements:?}");
    }
}
