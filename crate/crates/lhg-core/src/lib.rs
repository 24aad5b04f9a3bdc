//! Linear r-uniform hypergraphs: data model, finite-field backed designs,
//! forbidden-configuration detection, Turán-type bound checking, and exact
//! maximum-edge search at desk scale.

pub mod analysis;
pub mod constructions;
pub mod gf;
pub mod hypergraph;
pub mod patterns;
pub mod random;
pub mod search;

pub use hypergraph::{Edge, HypergraphError, LinearHypergraph, ParseError, Violation};
pub use patterns::{Embedding, Freeness, Pattern, PatternKind};
