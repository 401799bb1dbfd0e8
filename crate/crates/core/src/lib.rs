//! Divisive community detection driven by edge betweenness, where each pair
//! of nodes is weighted by the game-theoretic power of its endpoints.
//!
//! The pipeline is: parse a [`Graph`], run [`run_divisive`] to obtain a
//! [`Dendrogram`], score its partitions with [`metrics_vector`] and compare
//! dendrograms with [`criterion_report`] and [`combined_compare`].
//!
//! ```
//! use nodegame::{metrics_vector, criterion_report, run_divisive, Algorithm, GameParams, Graph};
//!
//! let g: Graph = "1 2\n2 3\n2 4\n3 5\n4 5\n5 6".parse().unwrap();
//! let d = run_divisive(&g, Algorithm::Gice, GameParams::default(), 0).unwrap();
//! assert_eq!(d.partitions().len(), 5);
//! let report = criterion_report(&metrics_vector(&g, &d).unwrap()).unwrap();
//! assert_eq!(report.t_max, 1);
//! ```

pub mod benchmark;
pub mod betweenness;
pub mod criteria;
pub mod divisive;
pub mod error;
pub mod game;
pub mod graph;
pub mod io;
pub mod partition;
pub mod quality;

pub use benchmark::{
    benchmark_spec, generate, run_benchmark, BenchmarkSpec, BenchmarkSummary, RunRecord,
};
pub use betweenness::{
    brute_betweenness, node_game_betweenness, sp_edge_betweenness, weighted_edge_betweenness,
    EdgeScores, Sources,
};
pub use criteria::{
    combined_compare, criterion_report, eps_equivalent, lex_compare, CriterionReport, Level,
    Verdict, DEFAULT_EPS,
};
pub use divisive::{
    run_divisive, run_divisive_with, select_sources, select_sources_with, source_count, Algorithm,
    Dendrogram, DivisiveConfig, LogBase, PowerModel, RemovalEvent,
};
pub use error::{Error, Result};
pub use game::{
    pair_weights, power_vector, semivalue_bruteforce, v_mod, GameParams, MinPower, PairWeight,
    PowerVector, Semivalue, UnitWeight,
};
pub use graph::{bfs_sssp, connected_components, parse_edge_list, Edge, Graph, NodeId, SsspResult};
pub use partition::{CommunityTally, Partition};
pub use quality::{
    coefficient_of_variation, metrics_vector, modularity, nmi, nmi_with, MetricsVector,
    ModularityForm, NmiNormalization,
};
