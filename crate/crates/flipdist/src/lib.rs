//! Flip distances between constrained graph orientations.
//!
//! Two families of instances are covered. Orientations with prescribed
//! outdegrees (including perfect matchings of bipartite graphs) are
//! reconfigured by reversing directed cycles; orientations with prescribed
//! forward counts on cycles are reconfigured by reversing directed cuts,
//! and flipping only sources and sinks turns the reachable class into a
//! distributive lattice whose shortest paths this crate computes exactly.
//! Brute-force oracles, polytope adjacency tests, and generators for three
//! hardness reductions round out the toolkit.

pub mod alpha;
pub mod corient;
pub mod distance;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod polytope;
pub mod poset;
pub mod reductions;

pub use error::{Error, Result};
pub use graph::{Dicut, EdgeSet, Graph, Orientation};
