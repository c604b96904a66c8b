//! Deterministic `(2k-1)`-stretch roundtrip spanners for directed graphs
//! with real edge weights in `[1, W]`, together with exact brute-force
//! verification of stretch and size.
//!
//! Two constructions are provided: [`spanner_basic`], whose size grows with
//! `log(nW)`, and [`spanner_strong`], which contracts short cycles per length
//! scale so that the size bound only depends on `n` and `k`.

// Negated float comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cover;
pub mod dsu;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod radius;
pub mod sssp;
pub mod stats;
pub mod strong;
pub mod verify;

pub use cover::{cover, select_h, spanner_basic, Algorithm, CoverStep, CoverTrace, SpannerResult, SpannerStats};
pub use error::{Error, Result};
pub use generate::{generate, GenParams, Model};
pub use graph::{Edge, EdgeId, EdgeSet, Graph, GraphView, VertexSet};
pub use io::{match_edges, parse_graph, write_graph, ParseOptions};
pub use radius::{build_e0, compute_radii, hitting_set, HittingSet, RadiusMap};
pub use sssp::{ball, dijkstra, in_out_trees, roundtrip_from, Direction, DistanceMap, INFINITY};
pub use stats::{GraphSummary, RunStats};
pub use strong::{
    compute_girths, contract, contracted_roundtrip_from, cover2, new_in_out_trees, spanner_strong,
    spanner_strong_with, ContractedGraph, GirthMap, StrongOptions,
};
pub use verify::{all_pairs_roundtrip, verify_size, verify_stretch, SizeMode, StretchReport};

/// Builds a spanner with the chosen construction.
pub fn build_spanner(g: &Graph, k: u32, algorithm: Algorithm, opts: &StrongOptions) -> Result<SpannerResult> {
    match algorithm {
        Algorithm::Basic => spanner_basic(g, k),
        Algorithm::Strong => spanner_strong_with(g, k, opts),
    }
}
