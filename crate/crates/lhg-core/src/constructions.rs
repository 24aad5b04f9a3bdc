//! Generators for the extremal constructions: algebraic transversal designs
//! T(q^2, q), their group-extended form, the slope-indexed one-factorization,
//! and the apex construction that packs crown-free r-graphs from m design
//! copies.

use crate::gf::{factor_prime_power, FieldSpec, GfError};
use crate::hypergraph::LinearHypergraph;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("copy count must be at least 1")]
    InvalidCopies,
    #[error("input is not a group-extended design in algebraic form")]
    NotAlgebraicForm,
    #[error(transparent)]
    Field(#[from] GfError),
}

/// A transversal design T(q^2, q): q groups of q vertices, q^2 blocks, every
/// cross-group pair in exactly one block.
#[derive(Debug, Clone)]
pub struct TransversalDesign {
    pub graph: LinearHypergraph,
    pub groups: Vec<Vec<usize>>,
    pub block_ids: Vec<usize>,
    pub q: usize,
}

/// The design plus one edge per group, with enough provenance kept to read
/// the one-factorization off the block layout.
#[derive(Debug, Clone)]
pub struct ExtendedDesign {
    pub graph: LinearHypergraph,
    pub group_edge_ids: Vec<usize>,
    pub q: usize,
}

/// A partition of a graph's edge ids into parallel classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub classes: Vec<Vec<usize>>,
}

impl Factorization {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// Builds T(q^2, q) over GF(q). Vertex (group i, field element y) gets id
/// `i*q + rank(y)`; block (a, b) collects `(i, a*g_i + b)` over all groups,
/// where `g_i` is the i-th field element. Blocks are emitted a-major, so the
/// q blocks of a common slope a are consecutive edge ids.
pub fn transversal_design(q: u64) -> Result<TransversalDesign, ConstructionError> {
    factor_prime_power(q).ok_or(ConstructionError::NotPrimePower(q))?;
    let field = FieldSpec::of_order(q)?;
    let q = q as usize;
    let elements = field.elements();
    let mut graph = LinearHypergraph::new_empty(q * q, q).expect("q >= 2");
    for a in &elements {
        for b in &elements {
            let block: Vec<usize> = elements
                .iter()
                .enumerate()
                .map(|(i, g)| i * q + field.rank(&field.add(&field.mul(a, g), b)) as usize)
                .collect();
            graph.add_edge(&block).expect("distinct slopes or offsets share at most one point");
        }
    }
    let groups: Vec<Vec<usize>> = (0..q).map(|i| (i * q..(i + 1) * q).collect()).collect();
    let block_ids = (0..q * q).collect();
    debug_assert!(graph.validate().is_empty());
    Ok(TransversalDesign {
        graph,
        groups,
        block_ids,
        q,
    })
}

/// Adds one edge per group to the design: q^2 + q edges, every vertex of
/// degree q + 1, still linear.
pub fn extend_with_groups(td: &TransversalDesign) -> ExtendedDesign {
    let mut graph = td.graph.clone();
    let mut group_edge_ids = Vec::with_capacity(td.q);
    for group in &td.groups {
        let id = graph
            .add_edge(group)
            .expect("a group shares at most one vertex with any block");
        group_edge_ids.push(id);
    }
    ExtendedDesign {
        graph,
        group_edge_ids,
        q: td.q,
    }
}

/// Reads the one-factorization off the extended design: one class per slope
/// (the q blocks `B(a, *)`), plus the class of group edges — q + 1 perfect
/// matchings in total. Each claimed class is verified to be a perfect
/// matching before it is returned.
pub fn one_factorization(ext: &ExtendedDesign) -> Result<Factorization, ConstructionError> {
    let q = ext.q;
    let n = q * q;
    if ext.graph.n() != n || ext.graph.edge_count() != n + q {
        return Err(ConstructionError::NotAlgebraicForm);
    }
    let mut classes: Vec<Vec<usize>> = (0..q).map(|a| (a * q..(a + 1) * q).collect()).collect();
    classes.push((n..n + q).collect());
    for class in &classes {
        let mut covered = vec![false; n];
        for &id in class {
            for &v in ext.graph.edge(id).vertices() {
                if v >= n || covered[v] {
                    return Err(ConstructionError::NotAlgebraicForm);
                }
                covered[v] = true;
            }
        }
        if covered.iter().any(|&c| !c) {
            return Err(ConstructionError::NotAlgebraicForm);
        }
    }
    Ok(Factorization { classes })
}

/// The crown-free construction: m disjoint copies of the group-extended
/// design on q = r-1 points per group, the factor classes aligned across
/// copies, and one new apex vertex per factor absorbed into each of its
/// (r-1)-edges. The (r-1)-graph edges themselves are dropped; only the
/// resulting r-edges remain.
///
/// Vertex layout: copy c occupies `c*q^2..(c+1)*q^2`, apexes come last. The
/// result has `(r-1)^2 m + r` vertices and `r(r-1)m` edges.
pub fn crown_free_construction(r: usize, m: usize) -> Result<LinearHypergraph, ConstructionError> {
    if m < 1 {
        return Err(ConstructionError::InvalidCopies);
    }
    let q = r.checked_sub(1).filter(|&q| q >= 2).ok_or_else(|| {
        ConstructionError::NotPrimePower(r.saturating_sub(1) as u64)
    })?;
    let td = transversal_design(q as u64)?;
    let ext = extend_with_groups(&td);
    let factors = one_factorization(&ext)?;
    debug_assert_eq!(factors.class_count(), r);

    let base = q * q;
    let n = base * m + r;
    let mut graph = LinearHypergraph::new_empty(n, r).expect("r >= 3");
    for copy in 0..m {
        let shift = copy * base;
        for (j, class) in factors.classes.iter().enumerate() {
            let apex = base * m + j;
            for &id in class {
                let mut verts: Vec<usize> =
                    ext.graph.edge(id).vertices().iter().map(|&v| v + shift).collect();
                verts.push(apex);
                graph
                    .add_edge(&verts)
                    .expect("factor edges are disjoint within a class and copies are disjoint");
            }
        }
    }
    debug_assert!(graph.validate().is_empty());
    Ok(graph)
}

/// The r = 3 case, kept under its own name: m disjoint K4's, one apex per
/// perfect matching, 4m+3 vertices and 6m triples.
pub fn grs_construction(m: usize) -> Result<LinearHypergraph, ConstructionError> {
    crown_free_construction(3, m)
}
