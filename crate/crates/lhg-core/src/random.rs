//! Seeded random linear hosts for differential testing and benchmarks.

use crate::hypergraph::LinearHypergraph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Builds a random linear r-graph on `n` vertices with up to `max_edges`
/// edges by repeated insertion attempts; rejected attempts are skipped.
/// Fully determined by the seed, independent of platform.
pub fn random_linear_graph(n: usize, r: usize, max_edges: usize, seed: u64) -> LinearHypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = LinearHypergraph::new_empty(n, r).expect("r >= 2");
    if n < r {
        return g;
    }
    let attempts = max_edges * 20;
    let mut pool: Vec<usize> = (0..n).collect();
    for _ in 0..attempts {
        if g.edge_count() >= max_edges {
            break;
        }
        pool.shuffle(&mut rng);
        let mut verts: Vec<usize> = pool[..r].to_vec();
        verts.sort_unstable();
        let _ = g.add_edge(&verts);
    }
    g
}

/// Variant that also randomizes the vertex count in `r..=max_n`.
pub fn random_linear_graph_sized(
    max_n: usize,
    r: usize,
    max_edges: usize,
    seed: u64,
) -> LinearHypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(r..=max_n);
    random_linear_graph(n, r, max_edges, rng.gen())
}
