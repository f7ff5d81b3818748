//! `ggm`: generate graphs, measure them and run opinion dynamics sweeps.
//!
//! Relative input paths that do not exist are looked up under
//! `GGM_DATA_DIR` when that variable is set.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use ggm_core::analysis::EXPANSION_CSV_HEADER;
use ggm_core::experiment::{CONVERGENCE_ROUND_CAP, STRATEGY_ROUNDS};
use ggm_core::graph::{read_edge_list_file, write_edge_list, write_label_map};
use ggm_core::{
    betweenness_centrality, closeness_centrality, degree_centrality, emit_plot, expansion_report, fit_scaling,
    generate, rng_from_seed, run_experiment, DynamicsConfig, Engine, ExperimentSpec, GraphKind, GraphSource,
    ScalingModel, StrategyKind, SweepKind, SweepOutput, Table, TieRule, TraitsMode,
};

#[derive(Parser)]
#[command(name = "ggm", version, about = "Graph-based Galam model experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as an edge list.
    Generate {
        #[arg(long)]
        kind: GraphKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-node centralities and the expansion of a graph.
    Analyze {
        #[arg(long)]
        graph: PathBuf,
        /// Node table destination (default stdout). The expansion line always goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the `original_label,dense_id` mapping here.
        #[arg(long)]
        mapping: Option<PathBuf>,
    },
    /// Rounds to consensus on generated graphs of increasing size.
    Converge {
        #[arg(long)]
        kind: GraphKind,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// cycle-block, cycle-alt, random, degree, betweenness or closeness
        #[arg(long, default_value = "random")]
        init: StrategyKind,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value_t = CONVERGENCE_ROUND_CAP)]
        cap: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Final blue ratio against the initial ratio on a complete graph.
    Ratio {
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")]
        alphas: Vec<f64>,
        #[arg(long, default_value_t = CONVERGENCE_ROUND_CAP)]
        cap: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Compare seeding strategies on a graph file at a fixed horizon.
    Influence {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "degree,betweenness,closeness")]
        strategies: Vec<StrategyKind>,
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.3,0.4")]
        alphas: Vec<f64>,
        #[arg(long, default_value_t = STRATEGY_ROUNDS)]
        rounds: u64,
        #[arg(long, value_enum, default_value_t = Traits::Off)]
        traits: Traits,
        #[command(flatten)]
        common: Common,
    },
    /// Render a result CSV as an SVG line chart.
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        series: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Plot every row instead of only the summary rows.
        #[arg(long)]
        all_rows: bool,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// group, node or white
    #[arg(long, default_value = "group")]
    tie: TieRule,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(3..=4))]
    max_group: u8,
    /// auto, sequential or local
    #[arg(long, default_value = "auto")]
    engine: Engine,
    /// Write 0 for wall_ms so that output is byte-stable.
    #[arg(long)]
    no_timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Traits {
    On,
    Off,
    Frozen,
}

impl From<Traits> for TraitsMode {
    fn from(t: Traits) -> Self {
        match t {
            Traits::On => TraitsMode::PerTrial,
            Traits::Off => TraitsMode::Off,
            Traits::Frozen => TraitsMode::Frozen,
        }
    }
}

impl Common {
    fn spec(
        &self,
        kind: SweepKind,
        source: GraphSource,
        strategies: Vec<StrategyKind>,
        alphas: Vec<f64>,
        round_cap: u64,
        traits: TraitsMode,
    ) -> ExperimentSpec {
        ExperimentSpec {
            kind,
            source,
            strategies,
            alphas,
            trials: self.trials,
            round_cap,
            master_seed: self.seed,
            dynamics: DynamicsConfig {
                max_group_size: self.max_group as usize,
                tie_rule: self.tie,
                traits_enabled: false,
                engine: self.engine,
            },
            traits,
            record_wall_time: !self.no_timing,
        }
    }
}

fn data_path(path: &Path) -> PathBuf {
    if path.is_relative() && !path.exists() {
        if let Some(dir) = std::env::var_os("GGM_DATA_DIR") {
            return Path::new(&dir).join(path);
        }
    }
    path.to_path_buf()
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) if p != Path::new("-") => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        _ => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_sweep(out: &SweepOutput, path: Option<&Path>) -> Result<()> {
    out.write_csv(output(path)?)?;
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Generate { kind, n, seed, out } => {
            let g = generate(kind, n, &mut rng_from_seed(seed))?;
            write_edge_list(&g, output(out.as_deref())?)?;
        }
        Command::Analyze { graph, out, mapping } => {
            let path = data_path(&graph);
            let loaded = read_edge_list_file(&path).with_context(|| format!("cannot load {}", path.display()))?;
            let g = &loaded.graph;
            let degree = degree_centrality(g);
            let betweenness = betweenness_centrality(g);
            let closeness = closeness_centrality(g);
            let mut w = output(out.as_deref())?;
            writeln!(w, "node,label,degree,betweenness,closeness")?;
            for v in 0..g.node_count() {
                writeln!(
                    w,
                    "{v},{},{},{},{}",
                    loaded.labels[v], degree.scores[v], betweenness.scores[v], closeness.scores[v]
                )?;
            }
            w.flush()?;
            drop(w);
            if let Some(m) = mapping {
                write_label_map(&loaded.labels, output(Some(&m))?)?;
            }
            let report = expansion_report(g)?;
            let mut stdout = io::stdout().lock();
            if out.is_none() {
                writeln!(stdout)?;
            }
            writeln!(stdout, "{EXPANSION_CSV_HEADER}\n{}", report.csv_line())?;
        }
        Command::Converge { kind, sizes, init, alpha, cap, common } => {
            if init.needs_traits() {
                bail!("--init {init} needs node traits; use influence for trait-based seeding");
            }
            let spec = common.spec(
                SweepKind::Convergence,
                GraphSource::Generated { kind, sizes },
                vec![init],
                vec![alpha],
                cap,
                TraitsMode::Off,
            );
            let out = run_experiment(&spec)?;
            write_sweep(&out, common.out.as_deref())?;
            let points: Vec<(f64, f64)> = out.summaries().map(|s| (s.n as f64, s.mean_rounds)).collect();
            if points.len() >= 3 {
                if let Ok(fit) = fit_scaling(&points, ScalingModel::Power) {
                    eprintln!("power fit of mean rounds: exponent {:.3}, R^2 {:.3}", fit.slope, fit.r_squared);
                }
            }
            if out.summaries().any(|s| !s.all_converged) {
                eprintln!("warning: some trials hit the round cap of {cap}");
            }
        }
        Command::Ratio { n, alphas, cap, common } => {
            let spec = common.spec(
                SweepKind::Ratio,
                GraphSource::Generated { kind: GraphKind::Complete, sizes: vec![n] },
                vec![StrategyKind::Random],
                alphas,
                cap,
                TraitsMode::Off,
            );
            write_sweep(&run_experiment(&spec)?, common.out.as_deref())?;
        }
        Command::Influence { graph, strategies, alphas, rounds, traits, common } => {
            let path = data_path(&graph);
            let loaded = read_edge_list_file(&path).with_context(|| format!("cannot load {}", path.display()))?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "graph".into());
            let source = GraphSource::Given { name, graph: Arc::new(loaded.graph) };
            let spec = common.spec(SweepKind::Strategy, source, strategies, alphas, rounds, traits.into());
            write_sweep(&run_experiment(&spec)?, common.out.as_deref())?;
        }
        Command::Plot { input, x, y, series, out, all_rows } => {
            let file = File::open(&input).with_context(|| format!("cannot open {}", input.display()))?;
            let mut table = Table::read_csv(file)?;
            if !all_rows {
                if let Some(summary) = table.summary_rows() {
                    table = summary;
                }
            }
            let svg = emit_plot(&table, &x, &y, &series)?;
            let mut w = output(out.as_deref())?;
            w.write_all(svg.as_bytes())?;
            w.flush()?;
        }
    }
    Ok(())
}
