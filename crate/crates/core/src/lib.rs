//! Spectra and spectral spread of the generalized distance matrix
//! `D_α(G) = α·Tr(G) + (1 − α)·D(G)` of connected graphs.
//!
//! The crate covers distance profiles and graph6 I/O ([`graph`]), matrix
//! builders and quotient matrices ([`matrix`]), a Jacobi eigensolver
//! ([`eigen`]), closed-form spectra of graph families ([`families`]), a
//! registry of spread bounds ([`bounds`]) and corpus sweeps ([`corpus`]).

pub mod bounds;
pub mod cliques;
pub mod corpus;
pub mod eigen;
pub mod families;
pub mod graph;
pub mod matrix;
pub mod report;

pub use bounds::{evaluate_all, evaluate_bound, BoundError, BoundId, BoundReport, Direction, Status};
pub use cliques::{clique_number, independence_number, CapExceeded};
pub use corpus::{
    check_complete_bipartite_ordering, check_problem_39, random_connected_graph, read_corpus, sweep,
    ConjectureResult, CorpusError, CorpusSummary,
};
pub use eigen::{eigenvalues, spectral_spread, sym_eigen, EigenError, Spectrum};
pub use families::{FamilyError, FamilySpec};
pub use graph::{distance_profile, parse_edge_list, parse_graph6, DistanceProfile, Graph, GraphError};
pub use matrix::{generalized_distance_matrix, quotient_matrix, MatrixError, SymMatrix, VertexPartition};
