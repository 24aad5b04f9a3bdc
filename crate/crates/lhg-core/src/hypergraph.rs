//! Linear r-uniform hypergraphs over dense integer vertices.
//!
//! A hypergraph here is *linear*: any two edges share at most one vertex,
//! equivalently every unordered vertex pair lies in at most one edge. The
//! pair-to-edge index is the single admission authority for incremental
//! building; [`LinearHypergraph::validate`] re-derives everything from the
//! raw edge list for independent audits.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while building or extending a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("uniformity must be at least 2, got {0}")]
    InvalidUniformity(usize),
    #[error("edge has {got} vertices, expected {expected}")]
    WrongArity { expected: usize, got: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} repeated within an edge")]
    RepeatedVertex(usize),
    #[error("pair {{{u},{v}}} already covered by edge {edge}")]
    DuplicatePair { u: usize, v: usize, edge: usize },
}

/// An edge: a strictly ascending list of distinct vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    vertices: Vec<usize>,
}

impl Edge {
    /// Builds an edge from vertices in any order; sorts them and rejects
    /// repeats.
    pub fn new(vertices: impl IntoIterator<Item = usize>) -> Result<Self, HypergraphError> {
        let mut vertices: Vec<usize> = vertices.into_iter().collect();
        vertices.sort_unstable();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(HypergraphError::RepeatedVertex(w[0]));
            }
        }
        Ok(Edge { vertices })
    }

    /// Wraps a vertex list without sorting or checking. Intended for
    /// deserialization and audit paths that run [`LinearHypergraph::validate`]
    /// afterwards.
    pub fn from_raw(vertices: Vec<usize>) -> Self {
        Edge { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// All unordered vertex pairs of the edge, each as `(low, high)`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let vs = &self.vertices;
        (0..vs.len()).flat_map(move |i| (i + 1..vs.len()).map(move |j| (vs[i], vs[j])))
    }

    /// Number of shared vertices with another edge.
    pub fn intersection_size(&self, other: &Edge) -> usize {
        self.vertices
            .iter()
            .filter(|v| other.contains(**v))
            .count()
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.vertices {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// A single invariant failure found by [`LinearHypergraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Edge does not have exactly `r` vertices.
    WrongArity { edge: usize, len: usize },
    /// Edge mentions a vertex `>= n`.
    VertexOutOfRange { edge: usize, vertex: usize },
    /// Edge vertex list is not strictly ascending (unsorted or repeated).
    NotAscending { edge: usize },
    /// Two edges share two or more vertices.
    DuplicatePair {
        u: usize,
        v: usize,
        first: usize,
        second: usize,
    },
    /// Stored pair index disagrees with one recomputed from the edge list.
    PairIndexInconsistent,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongArity { edge, len } => {
                write!(f, "edge {edge} has arity {len}")
            }
            Violation::VertexOutOfRange { edge, vertex } => {
                write!(f, "edge {edge} mentions out-of-range vertex {vertex}")
            }
            Violation::NotAscending { edge } => {
                write!(f, "edge {edge} is not strictly ascending")
            }
            Violation::DuplicatePair {
                u,
                v,
                first,
                second,
            } => {
                write!(f, "pair {{{u},{v}}} covered by edges {first} and {second}")
            }
            Violation::PairIndexInconsistent => write!(f, "pair index inconsistent with edges"),
        }
    }
}

/// A linear r-uniform hypergraph on vertices `0..n`.
///
/// Edges keep insertion order; their id is the position in the edge list.
/// Once built, a graph is immutable for all read paths and can be shared
/// freely across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearHypergraph {
    n: usize,
    r: usize,
    edges: Vec<Edge>,
    pair_index: HashMap<(usize, usize), usize>,
}

impl LinearHypergraph {
    /// An edgeless graph on `n` vertices with uniformity `r >= 2`.
    pub fn new_empty(n: usize, r: usize) -> Result<Self, HypergraphError> {
        if r < 2 {
            return Err(HypergraphError::InvalidUniformity(r));
        }
        Ok(LinearHypergraph {
            n,
            r,
            edges: Vec::new(),
            pair_index: HashMap::new(),
        })
    }

    /// Builds a graph from raw parts with no checking at all; callers are
    /// expected to run [`validate`](Self::validate). The pair index is built
    /// first-wins, so duplicate pairs surface as violations rather than
    /// corruption.
    pub fn from_parts_unchecked(n: usize, r: usize, edges: Vec<Vec<usize>>) -> Self {
        let edges: Vec<Edge> = edges.into_iter().map(Edge::from_raw).collect();
        let mut pair_index = HashMap::new();
        for (id, e) in edges.iter().enumerate() {
            for (u, v) in distinct_pairs(e.vertices()) {
                pair_index.entry((u, v)).or_insert(id);
            }
        }
        LinearHypergraph {
            n,
            r,
            edges,
            pair_index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    /// The id of the unique edge covering the pair `{u,v}`, if any.
    pub fn edge_containing_pair(&self, u: usize, v: usize) -> Option<usize> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.pair_index.get(&key).copied()
    }

    /// Appends an edge, enforcing arity, vertex range and linearity. On any
    /// rejection the graph is left untouched.
    pub fn add_edge(&mut self, vertices: &[usize]) -> Result<usize, HypergraphError> {
        let edge = Edge::new(vertices.iter().copied())?;
        if edge.len() != self.r {
            return Err(HypergraphError::WrongArity {
                expected: self.r,
                got: edge.len(),
            });
        }
        if let Some(&v) = edge.vertices().last() {
            if v >= self.n {
                return Err(HypergraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        for (u, v) in edge.pairs() {
            if let Some(&other) = self.pair_index.get(&(u, v)) {
                return Err(HypergraphError::DuplicatePair { u, v, edge: other });
            }
        }
        let id = self.edges.len();
        for (u, v) in edge.pairs() {
            self.pair_index.insert((u, v), id);
        }
        self.edges.push(edge);
        Ok(id)
    }

    /// Number of edges containing `v`.
    ///
    /// Panics if `v >= n`; the vertex range is a caller contract, like slice
    /// indexing.
    pub fn degree(&self, v: usize) -> usize {
        assert!(v < self.n, "vertex {v} out of range for {} vertices", self.n);
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Degrees of all vertices in one pass.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.n];
        for e in &self.edges {
            for &v in e.vertices() {
                if v < self.n {
                    d[v] += 1;
                }
            }
        }
        d
    }

    /// Ids of all edges containing `v`.
    pub fn edges_through(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.contains(v))
            .map(|(id, _)| id)
            .collect()
    }

    /// Full invariant audit, independent of the pair index: arity, vertex
    /// range, ascending order, pairwise intersections, and index consistency.
    /// Returns every violation found; an empty list means the graph is sound.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if e.len() != self.r {
                out.push(Violation::WrongArity { edge: id, len: e.len() });
            }
            for &v in e.vertices() {
                if v >= self.n {
                    out.push(Violation::VertexOutOfRange { edge: id, vertex: v });
                }
            }
            if e.vertices().windows(2).any(|w| w[0] >= w[1]) {
                out.push(Violation::NotAscending { edge: id });
            }
        }
        // Exhaustive pair scan across distinct vertex sets, not via pair_index.
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        let mut clean = true;
        for (id, e) in self.edges.iter().enumerate() {
            for (u, v) in distinct_pairs(e.vertices()) {
                match seen.get(&(u, v)) {
                    Some(&first) => {
                        out.push(Violation::DuplicatePair {
                            u,
                            v,
                            first,
                            second: id,
                        });
                        clean = false;
                    }
                    None => {
                        seen.insert((u, v), id);
                    }
                }
            }
        }
        if clean && seen != self.pair_index {
            out.push(Violation::PairIndexInconsistent);
        }
        out
    }

    /// Canonical `.lhg` text: header `n r m`, then one line per edge, LF only.
    pub fn to_lhg_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n, self.r, self.edges.len());
        for e in &self.edges {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses `.lhg` text, rebuilding through `add_edge` so every invariant
    /// is enforced on the way in.
    pub fn from_lhg_text(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.lines();
        let header = lines.next().ok_or(ParseError::MissingHeader)?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(ParseError::MalformedHeader(header.to_string()));
        }
        let parse_num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| ParseError::MalformedHeader(header.to_string()))
        };
        let n = parse_num(fields[0])?;
        let r = parse_num(fields[1])?;
        let m = parse_num(fields[2])?;
        let mut graph =
            LinearHypergraph::new_empty(n, r).map_err(|e| ParseError::Edge { line: 1, source: e })?;
        for i in 0..m {
            let line_no = i + 2;
            let line = lines.next().ok_or(ParseError::MissingEdges {
                expected: m,
                got: i,
            })?;
            let mut vertices = Vec::with_capacity(r);
            for tok in line.split_whitespace() {
                let v = tok.parse::<usize>().map_err(|_| ParseError::BadToken {
                    line: line_no,
                    token: tok.to_string(),
                })?;
                vertices.push(v);
            }
            graph
                .add_edge(&vertices)
                .map_err(|e| ParseError::Edge { line: line_no, source: e })?;
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(ParseError::TrailingContent);
        }
        Ok(graph)
    }

    /// JSON mirror of the `.lhg` format.
    pub fn to_json(&self) -> String {
        let mirror = JsonGraph {
            n: self.n,
            r: self.r,
            edges: self
                .edges
                .iter()
                .map(|e| e.vertices().to_vec())
                .collect(),
        };
        serde_json::to_string(&mirror).expect("graph mirror serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let mirror: JsonGraph = serde_json::from_str(text)?;
        let mut graph = LinearHypergraph::new_empty(mirror.n, mirror.r)
            .map_err(|e| ParseError::Edge { line: 0, source: e })?;
        for vertices in &mirror.edges {
            graph
                .add_edge(vertices)
                .map_err(|e| ParseError::Edge { line: 0, source: e })?;
        }
        Ok(graph)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
}

fn distinct_pairs(vertices: &[usize]) -> Vec<(usize, usize)> {
    // Works on unvalidated data: dedups so that a repeated vertex does not
    // fabricate a pair with itself.
    let mut vs: Vec<usize> = vertices.to_vec();
    vs.sort_unstable();
    vs.dedup();
    let mut out = Vec::new();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            out.push((vs[i], vs[j]));
        }
    }
    out
}

/// Errors from `.lhg` / JSON deserialization.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("empty input, missing header")]
    MissingHeader,
    #[error("malformed header {0:?}, expected `n r m`")]
    MalformedHeader(String),
    #[error("line {line}: bad token {token:?}")]
    BadToken { line: usize, token: String },
    #[error("expected {expected} edges, found {got}")]
    MissingEdges { expected: usize, got: usize },
    #[error("unexpected content after the last edge")]
    TrailingContent,
    #[error("line {line}: {source}")]
    Edge {
        line: usize,
        source: HypergraphError,
    },
    #[error("invalid JSON graph: {0}")]
    Json(#[from] serde_json::Error),
}
