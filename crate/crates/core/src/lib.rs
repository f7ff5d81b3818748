//! Seedable Monte Carlo engine for the graph-based Galam opinion model.
//!
//! Every round the nodes are split into random cliques of at most three (or
//! four) members and each clique adopts its majority color. The crate
//! provides the graph families and loaders, the group allocation, the round
//! dynamics with optional activeness and stubbornness, centrality and
//! expansion measures, seed selection strategies and reproducible experiment
//! sweeps with CSV and SVG output.
//!
//! ```
//! use ggm_core::{generate, rng_from_seed, run, Coloring, DynamicsConfig, GraphKind};
//!
//! let mut rng = rng_from_seed(7);
//! let g = generate(GraphKind::Complete, 100, &mut rng).unwrap();
//! let start = Coloring::with_blue(100, 0..50);
//! let result = run(&g, &start, DynamicsConfig::default(), None, &mut rng, 10_000).unwrap();
//! assert!(result.converged);
//! ```

pub mod analysis;
pub mod clique;
pub mod dynamics;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod rng;
pub mod seeding;

pub use analysis::{
    betweenness_centrality, closeness_centrality, degree_centrality, edge_expansion, expansion_report,
    spectral_expansion, vertex_expansion, CentralityVector, ExpansionReport, Measure,
};
pub use clique::{enumerate_cliques, random_partition, Clique, GroupAllocator, Partition};
pub use dynamics::{
    group_update, run, sample_traits, step, update_colors, Color, Coloring, DynamicsConfig, Engine, NodeTraits,
    RunResult, Simulator, TieRule,
};
pub use error::{GgmError, Result};
pub use experiment::{
    emit_plot, fit_scaling, run_convergence_sweep, run_experiment, run_ratio_sweep, run_strategy_sweep,
    ExperimentSpec, GraphSource, ResultRow, ScalingFit, ScalingModel, SummaryRow, SweepKind, SweepOutput,
    Table, TraitsMode,
};
pub use graph::{bfs_distances, generate, load_edge_list, DistanceRow, Graph, GraphKind, NodeId};
pub use rng::{rng_from_seed, trial_seed, SimRng};
pub use seeding::{
    combined_rank, rank_nodes, select_seeds, Criterion, RankedList, SeedStrategy, StrategyKind,
};
