//! Experiment sweeps with per-trial seed streams.
//!
//! A sweep expands into points (graph x strategy x alpha). Trial `t` of
//! point `p` draws only from `trial_seed(master, p, t)`: graph generation
//! first (random families only), then traits, then seed selection, then the
//! dynamics. Trials run in parallel and rows are emitted in (point, trial)
//! order, so the output does not depend on scheduling and adding trials
//! leaves earlier trials untouched.

mod fit;
mod plot;
mod records;

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

pub use fit::{fit_scaling, ScalingFit, ScalingModel};
pub use plot::emit_plot;
pub use records::{Metric, Record, ResultRow, SummaryRow, SweepOutput, Table, CSV_HEADER};

use crate::dynamics::{sample_traits, DynamicsConfig, NodeTraits, Simulator};
use crate::error::{invalid, Result};
use crate::graph::{generate, read_edge_list_file, Graph, GraphKind};
use crate::rng::{child_seed, rng_from_seed, trial_seed};
use crate::seeding::{rank_nodes, select_seeds, RankedList, SeedStrategy, StrategyKind};

/// Default round cap for runs to absorption.
pub const CONVERGENCE_ROUND_CAP: u64 = 1_000_000;
/// Fixed horizon of the seeding experiments: three discussions a day for 100 days.
pub const STRATEGY_ROUNDS: u64 = 300;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepKind {
    Convergence,
    Ratio,
    Strategy,
}

#[derive(Clone, Debug)]
pub enum GraphSource {
    Generated { kind: GraphKind, sizes: Vec<usize> },
    File { path: PathBuf },
    /// An already built graph.
    Given { name: String, graph: Arc<Graph> },
}

/// How node traits are provided to the trials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TraitsMode {
    #[default]
    Off,
    /// Fresh traits for every trial, from the trial's stream.
    PerTrial,
    /// One draw per graph, shared by all trials.
    Frozen,
}

#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub kind: SweepKind,
    pub source: GraphSource,
    pub strategies: Vec<StrategyKind>,
    pub alphas: Vec<f64>,
    pub trials: usize,
    pub round_cap: u64,
    pub master_seed: u64,
    /// `traits_enabled` is ignored; `traits` decides.
    pub dynamics: DynamicsConfig,
    pub traits: TraitsMode,
    /// When false, `wall_ms` is written as 0 so that output is byte-stable.
    pub record_wall_time: bool,
}

impl ExperimentSpec {
    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return invalid("trials must be at least 1");
        }
        if self.round_cap == 0 {
            return invalid("round cap must be at least 1");
        }
        if self.strategies.is_empty() {
            return invalid("at least one strategy is required");
        }
        let needs_alpha = self.strategies.iter().any(|s| !s.is_structured());
        if needs_alpha && self.alphas.is_empty() {
            return invalid("at least one alpha is required");
        }
        if let Some(a) = self.alphas.iter().find(|a| !(0.0..=1.0).contains(*a)) {
            return invalid(format!("alpha {a} is outside [0, 1]"));
        }
        if let GraphSource::Generated { sizes, .. } = &self.source {
            if sizes.is_empty() {
                return invalid("size list is empty");
            }
            if sizes.windows(2).any(|w| w[0] >= w[1]) {
                return invalid("sizes must be strictly ascending");
            }
        }
        if self.traits == TraitsMode::Off {
            if let Some(s) = self.strategies.iter().find(|s| s.needs_traits()) {
                return invalid(format!("strategy {s} needs traits, but traits are off"));
            }
        }
        self.dynamics.validate()
    }

    fn dynamics_config(&self) -> DynamicsConfig {
        DynamicsConfig {
            traits_enabled: self.traits != TraitsMode::Off,
            ..self.dynamics
        }
    }

    fn metric(&self) -> Metric {
        match self.kind {
            SweepKind::Convergence => Metric::Rounds,
            SweepKind::Ratio | SweepKind::Strategy => Metric::FinalBlueRatio,
        }
    }
}

/// Convergence-time sweep over generated graphs of increasing size.
pub fn run_convergence_sweep(spec: &ExperimentSpec) -> Result<SweepOutput> {
    if spec.kind != SweepKind::Convergence {
        return invalid("spec is not a convergence sweep");
    }
    let GraphSource::Generated { kind, .. } = &spec.source else {
        return invalid("convergence sweeps need generated graphs");
    };
    if spec.strategies.iter().any(|s| s.is_structured()) && *kind != GraphKind::Cycle {
        return invalid("structured cycle seedings need --kind cycle");
    }
    run_sweep(spec)
}

/// Final-ratio sweep over alpha with random seeds on a complete graph.
pub fn run_ratio_sweep(spec: &ExperimentSpec) -> Result<SweepOutput> {
    if spec.kind != SweepKind::Ratio {
        return invalid("spec is not a ratio sweep");
    }
    if spec.strategies.iter().any(|s| *s != StrategyKind::Random) {
        return invalid("ratio sweeps use the random strategy only");
    }
    match &spec.source {
        GraphSource::Generated { kind: GraphKind::Complete, .. } => {}
        GraphSource::Given { graph, .. } if graph.is_complete() => {}
        _ => return invalid("ratio sweeps run on a complete graph"),
    }
    run_sweep(spec)
}

/// Seeding-strategy comparison at a fixed round horizon.
pub fn run_strategy_sweep(spec: &ExperimentSpec) -> Result<SweepOutput> {
    if spec.kind != SweepKind::Strategy {
        return invalid("spec is not a strategy sweep");
    }
    run_sweep(spec)
}

/// Dispatch on `spec.kind`.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<SweepOutput> {
    match spec.kind {
        SweepKind::Convergence => run_convergence_sweep(spec),
        SweepKind::Ratio => run_ratio_sweep(spec),
        SweepKind::Strategy => run_strategy_sweep(spec),
    }
}

struct GraphSlot {
    name: String,
    n: usize,
    kind: Option<GraphKind>,
    /// None when every trial generates its own graph.
    shared: Option<Arc<Graph>>,
    rankings: HashMap<StrategyKind, RankedList>,
    frozen_traits: Option<NodeTraits>,
}

struct Point {
    slot: usize,
    strategy: SeedStrategy,
}

const FROZEN_TRAITS_STREAM: u64 = u64::MAX;

fn build_slots(spec: &ExperimentSpec) -> Result<Vec<GraphSlot>> {
    let graphs: Vec<(String, usize, Option<GraphKind>, Option<Arc<Graph>>)> = match &spec.source {
        GraphSource::Generated { kind, sizes } => sizes
            .iter()
            .map(|&n| {
                let shared = if kind.is_random() {
                    None
                } else {
                    // deterministic families ignore the rng
                    Some(Arc::new(generate(*kind, n, &mut rng_from_seed(0))?))
                };
                Ok((kind.name().to_string(), n, Some(*kind), shared))
            })
            .collect::<Result<_>>()?,
        GraphSource::File { path } => {
            let loaded = read_edge_list_file(path)?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "graph".into());
            let n = loaded.graph.node_count();
            vec![(name, n, None, Some(Arc::new(loaded.graph)))]
        }
        GraphSource::Given { name, graph } => {
            vec![(name.clone(), graph.node_count(), None, Some(graph.clone()))]
        }
    };

    graphs
        .into_iter()
        .enumerate()
        .map(|(index, (name, n, kind, shared))| {
            let mut rankings = HashMap::new();
            if let Some(g) = &shared {
                for strategy in &spec.strategies {
                    if let StrategyKind::Ranked(c) = strategy {
                        if !c.needs_traits() && !rankings.contains_key(strategy) {
                            rankings.insert(*strategy, rank_nodes(*c, g, None)?);
                        }
                    }
                }
            }
            let frozen_traits = if spec.traits == TraitsMode::Frozen {
                let seed = child_seed(child_seed(spec.master_seed, FROZEN_TRAITS_STREAM), index as u64);
                Some(sample_traits(n, &mut rng_from_seed(seed))?)
            } else {
                None
            };
            Ok(GraphSlot {
                name,
                n,
                kind,
                shared,
                rankings,
                frozen_traits,
            })
        })
        .collect()
}

fn build_points(spec: &ExperimentSpec, slots: usize) -> Result<Vec<Point>> {
    let mut points = Vec::new();
    for slot in 0..slots {
        for &kind in &spec.strategies {
            if kind.is_structured() {
                points.push(Point {
                    slot,
                    strategy: SeedStrategy { kind, alpha: 0.5 },
                });
            } else {
                for &alpha in &spec.alphas {
                    points.push(Point {
                        slot,
                        strategy: SeedStrategy::new(kind, alpha)?,
                    });
                }
            }
        }
    }
    Ok(points)
}

fn run_trial(spec: &ExperimentSpec, slot: &GraphSlot, point: &Point, seed: u64, trial: usize) -> Result<ResultRow> {
    let started = Instant::now();
    let mut rng = rng_from_seed(seed);
    let graph = match &slot.shared {
        Some(g) => g.clone(),
        None => Arc::new(generate(
            slot.kind.expect("per-trial graphs are generated"),
            slot.n,
            &mut rng,
        )?),
    };
    let traits = match spec.traits {
        TraitsMode::Off => None,
        TraitsMode::PerTrial => Some(sample_traits(slot.n, &mut rng)?),
        TraitsMode::Frozen => slot.frozen_traits.clone(),
    };
    let coloring = match slot.rankings.get(&point.strategy.kind) {
        Some(ranking) => ranking.seed_prefix(point.strategy.alpha),
        None => select_seeds(&point.strategy, &graph, traits.as_ref(), &mut rng)?,
    };
    let mut sim = Simulator::new(&graph, spec.dynamics_config())?;
    let result = sim.run(&coloring, traits.as_ref(), &mut rng, spec.round_cap)?;
    let wall_ms = if spec.record_wall_time {
        started.elapsed().as_secs_f64() * 1e3
    } else {
        0.0
    };
    Ok(ResultRow {
        graph: slot.name.clone(),
        n: slot.n,
        m: graph.edge_count(),
        strategy: point.strategy.kind.name().to_string(),
        alpha: point.strategy.alpha,
        trial,
        seed,
        rounds: result.rounds_elapsed,
        converged: result.converged,
        final_blue_ratio: result.final_blue_ratio(),
        wall_ms,
    })
}

fn run_sweep(spec: &ExperimentSpec) -> Result<SweepOutput> {
    spec.validate()?;
    let slots = build_slots(spec)?;
    let points = build_points(spec, slots.len())?;
    let jobs: Vec<(usize, usize)> = (0..points.len())
        .flat_map(|p| (0..spec.trials).map(move |t| (p, t)))
        .collect();
    let rows: Vec<ResultRow> = jobs
        .par_iter()
        .map(|&(p, t)| {
            let point = &points[p];
            let seed = trial_seed(spec.master_seed, p as u64, t as u64);
            run_trial(spec, &slots[point.slot], point, seed, t)
        })
        .collect::<Result<_>>()?;

    let mut records = Vec::with_capacity(rows.len() + points.len());
    for chunk in rows.chunks(spec.trials) {
        let summary = SummaryRow::from_rows(chunk, spec.master_seed, spec.metric())?;
        records.extend(chunk.iter().cloned().map(Record::Data));
        records.push(Record::Summary(summary));
    }
    Ok(SweepOutput { records })
}
