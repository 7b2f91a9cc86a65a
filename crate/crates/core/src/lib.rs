//! Proper colorings of hypergraphs guided by their 1-intersection graph.
//!
//! The 1-intersection graph of a hypergraph has one vertex per hyperedge and
//! joins two hyperedges iff they share exactly one vertex. This crate
//! provides:
//!
//! * [`hypergraph`]: the core types and the 1-intersection graph;
//! * [`exact`]: exact bipartiteness, graph k-coloring and chromatic numbers;
//! * [`color`]: constructive 2-, 4- and (k+1)-colorers;
//! * [`gen`]: named families and a reproducible random sampler;
//! * [`search`]: a randomized audit comparing χ(H) with χ(H^\[1\]);
//! * [`format`] and [`cli`]: text formats and the command line.

pub mod cli;
pub mod color;
pub mod exact;
pub mod format;
pub mod gen;
pub mod hypergraph;
pub mod search;

pub use color::{four_color, greedy_color, two_color, ColorError, FourColoring, RecoloringTrace};
pub use exact::{
    bipartition, graph_chromatic_number, graph_k_coloring, hypergraph_chromatic_number, ExactError,
    OddCycle, SolverCaps,
};
pub use hypergraph::{
    check_proper, is_proper, EdgeClassColoring, Hypergraph, HypergraphError, IntersectionGraph,
    VertexColoring,
};
