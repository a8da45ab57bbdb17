//! Graphs built from nonsingular sums: `G(M₁, M₂)`, the auxiliary graph
//! `G*ₙ`, matchings, vertex covers and exact clique search.

pub mod clique;
mod graph;
mod matching;
mod sl2;
mod theorems;

pub use clique::{Clique, Outcome, DEFAULT_NODE_BUDGET};
pub use graph::{Bitset, SimpleGraph};
pub use matching::{
    build_bipartite_graph, greedy_maximal_matching, maximum_bipartite_matching,
    BipartiteSumGraph, Matching, MatchingKind, VertexCoverCertificate,
};
pub use sl2::{
    clique_number_experiment, clique_number_experiment_with_budget, enumerate_sl2, CliqueExperiment, OmegaReport, MAX_SL2_Q};
pub use theorems::{
    build_auxiliary_graph, clique_rank_link, diagonal_submatrix_check, exact_max_clique,
    largest_diagonal_block, theorem2_on, verify_theorem1, verify_theorem2, AuxiliaryGraph,
    CliqueRankReport, Theorem1Report, Theorem2Report,
};
