//! Distance-preserving (dp) spectra, sequentially distance-preserving (sdp)
//! orderings, lexicographic and Cartesian products, and brute-force checks
//! of how those properties behave under products.
//!
//! Graphs are simple, undirected, and small: vertices are dense indices
//! `0..n` with `n ≤ 64`, one `u64` adjacency row each. Anything that
//! enumerates subsets is exponential and meant for graphs of a few dozen
//! vertices at most.
//!
//! With the default `parallel` feature the subset searches and catalog
//! sweeps fan out over rayon; [`par::set_parallel`] switches that off at
//! runtime. Results never depend on scheduling.

pub mod catalog;
pub mod error;
pub mod format;
pub mod graph;
pub mod hunt;
pub mod metric;
pub mod par;
pub mod products;
pub mod verify;
mod vertex_set;

pub use error::{Error, Result};
pub use graph::{bfs_distances, build_graph, diameter, is_connected, DistanceMatrix, Graph, InducedSubgraph};
pub use hunt::{hunt_conjecture, CounterexampleRecord, HuntReport};
pub use metric::{
    dp_spectrum, is_dp, is_isometric, is_sdp, non_dp_interval_pairs, removal_set_family, sdp_sequence,
    DistanceIndex, DpSpectrum, NonDpIntervalPair, RemovalSetFamily, SdpSequence,
};
pub use products::{cart_distance, cart_product, lex_distance, lex_product, project, ProductGraph, ProductKind};
pub use vertex_set::{VertexSet, MAX_ORDER};
