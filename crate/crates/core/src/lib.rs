//! Overlapping clustering of correlation graphs under permissive vertex
//! splitting.
//!
//! Splitting a vertex replaces it by two copies that share its blue and red
//! neighbors between them. A graph is clustered once no cycle has exactly one
//! red edge, and the cheapest way to get there corresponds to an overlapping
//! clustering whose cost counts extra cluster memberships. This crate provides
//!
//! - [`graph`]: the graph model and the `ccg` format,
//! - [`clustering`]: clusterings, their cost and validation, and the
//!   translation to and from split-realized graphs,
//! - [`detect`]: bad triangles, bad star forests and the lower bound,
//! - [`kernel`]: reduction to an `O(k^3)`-vertex instance and solution lifting,
//! - [`approx`]: a polynomial 7-approximation for complete graphs,
//! - [`exact`]: exhaustive search used as a reference oracle,
//! - [`reduce`]: equivalence with multicut under vertex splitting,
//! - [`gen`]: hardness gadgets and seeded random instances.

pub mod approx;
pub mod clustering;
pub mod detect;
pub mod error;
pub mod exact;
pub mod gen;
pub mod graph;
pub mod kernel;
pub mod matching;
pub mod reduce;
mod text;

pub use approx::{
    approximate, approximate_with_report, ApproxPath, ApproxReport, SimpleSolutionParts,
};
pub use clustering::{
    clustering_to_splits, has_erroneous_cycle, is_valid_clustering, parse_clustering,
    splits_to_clustering, verify_clustering, write_clustering, Clustering, RealizedGraph,
    ValidationReport,
};
pub use detect::{find_bad_triangle, lower_bound, maximal_bad_star_forest, BadStar, BadStarForest};
pub use error::{Error, Result};
pub use exact::{decide, solve_exact, solve_multicut_exact, SearchBudget};
pub use gen::{gen_coloring_gadget, gen_random, gen_vertex_cover_gadget, PlainGraph};
pub use graph::{parse_graph, write_graph, CorrelationGraph, EdgeColor, GraphBuilder, VertexId};
pub use kernel::{
    kernel_size_bound, kernelize, lift_clustering, parse_transcript, rule_remove_isolated_cliques,
    write_transcript, KernelCluster, KernelResult, KernelTranscript,
};
pub use matching::{bipartite_min_vertex_cover, BipartiteGraph, VertexCover};
pub use reduce::{
    ccvs_to_mcvs, clustering_to_multicut_solution, mcvs_to_ccvs, multicut_solution_to_clustering,
    parse_mcsol, parse_mcvs, verify_multicut_solution, write_mcsol, write_mcvs, MulticutInstance,
    MulticutSolution,
};
