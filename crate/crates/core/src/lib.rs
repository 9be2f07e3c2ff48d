//! Community K-Shell spreader ranking for complex networks, with baseline
//! centralities, an Independent Cascade Monte Carlo engine, the associated
//! experiment protocols, and a nonparametric comparison battery.
//!
//! The pipeline behind the headline [`cks::rank_by_cks`] score:
//!
//! 1. [`community::louvain`] partitions the graph into communities.
//! 2. [`kshell::community_kshell`] peels each isolated community into
//!    K-shells.
//! 3. [`cks::kse`] scores a node's connection spread over a community's
//!    shells with a k-value-weighted entropy, and [`cks::cks_score`]
//!    accumulates `community size × entropy × connection count` over every
//!    connected community.
//!
//! Rankings are compared under the [`diffusion`] cascade model via the
//! sweeps in [`experiments`], and method differences are tested with the
//! [`stats`] battery. See the `examples/` directory for one runnable program
//! per capability.

pub mod baselines;
pub mod cks;
pub mod cli;
pub mod community;
pub mod diffusion;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod kshell;
pub mod rng;
pub mod score;
pub mod stats;

pub use error::{Error, Result};
pub use graph::{
    bfs_distances, generate_ba, generate_gnp, generate_powerlaw_cluster, graph_summary,
    load_edge_list, parse_edge_list, Graph, GraphSummary,
};
pub use community::{louvain, modularity, CommunityPartition};
pub use kshell::{
    community_kshell, isolate_communities, kshell_decomposition, CommunityShellAssignment,
    ShellAssignment,
};
pub use cks::{cks_score, connection_profile, kse, rank_by_cks, ConnectionProfile};
pub use score::{Method, ScoreTable};
pub use diffusion::{ic_monte_carlo, ic_single_run, select_seeds, CascadeResult, SeedSet};
pub use experiments::{
    average_spreader_distance, infected_vs_fraction, infected_vs_probability, rank_method,
    time_ranking, ExperimentCurve, TimingRecord,
};
pub use stats::{friedman_report, FriedmanReport, ResultMatrix};
