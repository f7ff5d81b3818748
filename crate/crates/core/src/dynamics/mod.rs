//! The round update: majority rule inside every group, optional
//! activeness/stubbornness, and drivers that run to absorption.
//!
//! The sequential engine draws within a round in a fixed order: activeness
//! draws in node-id order, then the group allocation picks, then tie draws
//! in group-commit order, then one stubbornness draw per group in
//! group-commit order. The local engine (see [`Engine::Local`]) draws a
//! single key per run from the caller's generator. Either way seeded runs
//! replay exactly.

mod local;

use std::fmt;
use std::str::FromStr;

use rand::distr::Open01;
use rand::Rng;

use crate::clique::{check_max_group_size, enumerate_cliques, GroupAllocator, Partition};
use crate::error::{invalid, GgmError, Result};
use crate::graph::{Graph, NodeId};
use local::LocalRounds;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    White,
    Blue,
}

impl Color {
    pub fn flipped(self) -> Color {
        match self {
            Color::White => Color::Blue,
            Color::Blue => Color::White,
        }
    }
}

/// Per-node opinions with a cached blue count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<Color>,
    blue: usize,
}

impl Coloring {
    pub fn uniform(n: usize, color: Color) -> Self {
        Coloring {
            colors: vec![color; n],
            blue: if color == Color::Blue { n } else { 0 },
        }
    }

    pub fn from_colors(colors: Vec<Color>) -> Self {
        let blue = colors.iter().filter(|&&c| c == Color::Blue).count();
        Coloring { colors, blue }
    }

    /// `n` nodes, Blue exactly at `blue_nodes`.
    pub fn with_blue(n: usize, blue_nodes: impl IntoIterator<Item = NodeId>) -> Self {
        let mut colors = vec![Color::White; n];
        for v in blue_nodes {
            colors[v as usize] = Color::Blue;
        }
        Self::from_colors(colors)
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, v: NodeId) -> Color {
        self.colors[v as usize]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn blue_count(&self) -> usize {
        self.blue
    }

    pub fn blue_ratio(&self) -> f64 {
        if self.colors.is_empty() {
            0.0
        } else {
            self.blue as f64 / self.colors.len() as f64
        }
    }

    pub fn is_monochromatic(&self) -> bool {
        self.blue == 0 || self.blue == self.colors.len()
    }

    pub fn blue_nodes(&self) -> Vec<NodeId> {
        (0..self.colors.len() as NodeId)
            .filter(|&v| self.colors[v as usize] == Color::Blue)
            .collect()
    }

    /// Every color flipped.
    pub fn inverted(&self) -> Coloring {
        Coloring {
            colors: self.colors.iter().map(|c| c.flipped()).collect(),
            blue: self.colors.len() - self.blue,
        }
    }

    fn set(&mut self, v: NodeId, color: Color) {
        let slot = &mut self.colors[v as usize];
        if *slot != color {
            if color == Color::Blue {
                self.blue += 1;
            } else {
                self.blue -= 1;
            }
            *slot = color;
        }
    }

    fn copy_from(&mut self, other: &Coloring) {
        self.colors.clear();
        self.colors.extend_from_slice(&other.colors);
        self.blue = other.blue;
    }
}

/// How a group with equally many Blue and White members decides.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TieRule {
    /// One fair coin for the whole group; Blue on heads.
    #[default]
    RandomGroup,
    /// An independent fair coin per member.
    RandomNode,
    /// Everyone turns White.
    BiasedWhite,
}

impl TieRule {
    pub fn name(self) -> &'static str {
        match self {
            TieRule::RandomGroup => "group",
            TieRule::RandomNode => "node",
            TieRule::BiasedWhite => "white",
        }
    }
}

impl fmt::Display for TieRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TieRule {
    type Err = GgmError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "group" => Ok(TieRule::RandomGroup),
            "node" => Ok(TieRule::RandomNode),
            "white" => Ok(TieRule::BiasedWhite),
            other => invalid(format!("unknown tie rule '{other}' (expected group, node or white)")),
        }
    }
}

/// Per-node activeness and stubbornness, both in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeTraits {
    act: Vec<f64>,
    stub: Vec<f64>,
}

impl NodeTraits {
    pub fn new(act: Vec<f64>, stub: Vec<f64>) -> Result<Self> {
        if act.len() != stub.len() {
            return invalid("activeness and stubbornness vectors differ in length");
        }
        let in_unit = |x: &f64| (0.0..=1.0).contains(x);
        if !act.iter().all(in_unit) || !stub.iter().all(in_unit) {
            return invalid("trait values must lie in [0, 1]");
        }
        Ok(NodeTraits { act, stub })
    }

    /// Every node with the same activeness and stubbornness.
    pub fn constant(n: usize, act: f64, stub: f64) -> Result<Self> {
        Self::new(vec![act; n], vec![stub; n])
    }

    pub fn len(&self) -> usize {
        self.act.len()
    }

    pub fn is_empty(&self) -> bool {
        self.act.is_empty()
    }

    pub fn activeness(&self) -> &[f64] {
        &self.act
    }

    pub fn stubbornness(&self) -> &[f64] {
        &self.stub
    }
}

/// Independent uniform(0, 1) activeness and stubbornness: all `n`
/// activeness values are drawn first, then all stubbornness values.
pub fn sample_traits<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<NodeTraits> {
    if n == 0 {
        return invalid("traits need at least one node");
    }
    let act = (0..n).map(|_| rng.sample(Open01)).collect();
    let stub = (0..n).map(|_| rng.sample(Open01)).collect();
    Ok(NodeTraits { act, stub })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DynamicsConfig {
    pub max_group_size: usize,
    pub tie_rule: TieRule,
    pub traits_enabled: bool,
    pub engine: Engine,
}

impl Default for DynamicsConfig {
    fn default() -> Self {
        DynamicsConfig {
            max_group_size: 3,
            tie_rule: TieRule::RandomGroup,
            traits_enabled: false,
            engine: Engine::Auto,
        }
    }
}

impl DynamicsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.traits_enabled && self.engine == Engine::Local {
            return invalid("the local engine does not support traits");
        }
        check_max_group_size(self.max_group_size)
    }
}

/// Outcome of [`run`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    pub rounds_elapsed: u64,
    pub converged: bool,
    /// Blue count before round 1, then after every round.
    pub trajectory: Vec<u32>,
    pub final_coloring: Coloring,
}

impl RunResult {
    pub fn final_blue_ratio(&self) -> f64 {
        self.final_coloring.blue_ratio()
    }
}

/// Resolve one group. `blue` of the `size` members are Blue.
enum Verdict {
    All(Color),
    PerMember,
}

fn decide<R: Rng + ?Sized>(blue: usize, size: usize, tie: TieRule, rng: &mut R) -> Verdict {
    let white = size - blue;
    if blue > white {
        Verdict::All(Color::Blue)
    } else if white > blue {
        Verdict::All(Color::White)
    } else {
        match tie {
            TieRule::RandomGroup => Verdict::All(if rng.random::<bool>() {
                Color::Blue
            } else {
                Color::White
            }),
            TieRule::RandomNode => Verdict::PerMember,
            TieRule::BiasedWhite => Verdict::All(Color::White),
        }
    }
}

fn coin_color<R: Rng + ?Sized>(rng: &mut R) -> Color {
    if rng.random::<bool>() {
        Color::Blue
    } else {
        Color::White
    }
}

/// Majority update of a single group's colors.
pub fn group_update<R: Rng + ?Sized>(colors: &[Color], tie: TieRule, rng: &mut R) -> Result<Vec<Color>> {
    if colors.is_empty() {
        return Err(GgmError::InvalidArgument(
            "empty group: the partition invariant is violated".into(),
        ));
    }
    let blue = colors.iter().filter(|&&c| c == Color::Blue).count();
    Ok(match decide(blue, colors.len(), tie, rng) {
        Verdict::All(c) => vec![c; colors.len()],
        Verdict::PerMember => colors.iter().map(|_| coin_color(rng)).collect(),
    })
}

/// Apply the majority rule to every group of `partition` simultaneously.
/// Nodes outside the partition keep their color.
pub fn update_colors<R: Rng + ?Sized>(
    current: &Coloring,
    partition: &Partition,
    tie: TieRule,
    rng: &mut R,
) -> Coloring {
    let mut next = current.clone();
    apply_majority(current, &mut next, partition, tie, rng);
    next
}

fn apply_majority<R: Rng + ?Sized>(
    current: &Coloring,
    next: &mut Coloring,
    partition: &Partition,
    tie: TieRule,
    rng: &mut R,
) {
    for group in &partition.groups {
        let members = group.members();
        if members.len() == 1 {
            continue;
        }
        let blue = members
            .iter()
            .filter(|&&v| current.get(v) == Color::Blue)
            .count();
        match decide(blue, members.len(), tie, rng) {
            Verdict::All(c) => members.iter().for_each(|&v| next.set(v, c)),
            Verdict::PerMember => {
                for &v in members {
                    let c = coin_color(rng);
                    next.set(v, c);
                }
            }
        }
    }
}

/// Round implementation used by a [`Simulator`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Engine {
    /// Local on sparse trait-free graphs, sequential otherwise.
    #[default]
    Auto,
    /// Draw cliques one by one from the remaining list.
    Sequential,
    /// Decide only the groups around bichromatic edges, using per-clique
    /// hashed order keys, and fall back to a full sequential round while
    /// the color boundary is dense. Same partition distribution as the
    /// sequential engine. Not available with traits.
    Local,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Auto => "auto",
            Engine::Sequential => "sequential",
            Engine::Local => "local",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = GgmError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Engine::Auto),
            "sequential" => Ok(Engine::Sequential),
            "local" => Ok(Engine::Local),
            other => invalid(format!("unknown engine '{other}' (expected auto, sequential or local)")),
        }
    }
}

enum Rounds<'g> {
    Sequential {
        allocator: GroupAllocator<'g>,
        partition: Partition,
        active: Vec<bool>,
    },
    Local(Box<LocalRounds<'g>>),
}

/// Owns the allocator and scratch buffers for repeated rounds on one graph.
pub struct Simulator<'g> {
    graph: &'g Graph,
    config: DynamicsConfig,
    rounds: Rounds<'g>,
}

impl<'g> Simulator<'g> {
    pub fn new(graph: &'g Graph, config: DynamicsConfig) -> Result<Self> {
        config.validate()?;
        let sequential = |allocator: GroupAllocator<'g>| Rounds::Sequential {
            allocator,
            partition: Partition::default(),
            active: vec![true; graph.node_count()],
        };
        let rounds = match config.engine {
            Engine::Sequential => sequential(GroupAllocator::new(graph, config.max_group_size)?),
            Engine::Local => {
                let cliques = enumerate_cliques(graph, None, config.max_group_size)?;
                Rounds::Local(Box::new(LocalRounds::new(
                    graph,
                    config.max_group_size,
                    cliques,
                    config.tie_rule,
                )?))
            }
            Engine::Auto => {
                if config.traits_enabled || graph.is_complete() {
                    sequential(GroupAllocator::new(graph, config.max_group_size)?)
                } else {
                    let cliques = enumerate_cliques(graph, None, config.max_group_size)?;
                    let local = LocalRounds::new(graph, config.max_group_size, cliques, config.tie_rule)?;
                    if local.max_cliques_per_node() <= local::MAX_CLIQUES_PER_NODE {
                        Rounds::Local(Box::new(local))
                    } else {
                        sequential(local.into_allocator())
                    }
                }
            }
        };
        Ok(Simulator { graph, config, rounds })
    }

    /// Use an explicitly constructed allocator with the sequential engine,
    /// whatever `config.engine` says.
    pub fn with_allocator(allocator: GroupAllocator<'g>, config: DynamicsConfig) -> Result<Self> {
        config.validate()?;
        if allocator.max_size() != config.max_group_size {
            return invalid("allocator and config disagree on the maximum group size");
        }
        let graph = allocator.graph();
        Ok(Simulator {
            graph,
            config,
            rounds: Rounds::Sequential {
                allocator,
                partition: Partition::default(),
                active: vec![true; graph.node_count()],
            },
        })
    }

    pub fn engine(&self) -> Engine {
        match self.rounds {
            Rounds::Sequential { .. } => Engine::Sequential,
            Rounds::Local(_) => Engine::Local,
        }
    }

    /// The groups of round `round` for a local engine run keyed by `key`.
    /// `None` for the sequential engine.
    pub fn local_partition(&mut self, key: u64, round: u64) -> Option<Partition> {
        match &mut self.rounds {
            Rounds::Local(local) => Some(local.partition(key, round)),
            Rounds::Sequential { .. } => None,
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn config(&self) -> &DynamicsConfig {
        &self.config
    }

    fn check_inputs(&self, c: &Coloring, traits: Option<&NodeTraits>) -> Result<()> {
        let n = self.graph().node_count();
        if c.len() != n {
            return invalid(format!("coloring has {} entries, graph has {n} nodes", c.len()));
        }
        if self.config.traits_enabled {
            match traits {
                None => return invalid("traits are enabled but none were supplied"),
                Some(t) if t.len() != n => {
                    return invalid(format!("traits cover {} nodes, graph has {n}", t.len()))
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn sequential_round<R: Rng + ?Sized>(
        &mut self,
        current: &Coloring,
        next: &mut Coloring,
        traits: Option<&NodeTraits>,
        rng: &mut R,
    ) -> Result<()> {
        let Rounds::Sequential {
            allocator,
            partition,
            active,
        } = &mut self.rounds
        else {
            unreachable!("sequential round on the local engine")
        };
        let traits = if self.config.traits_enabled { traits } else { None };
        next.copy_from(current);
        let mask = match traits {
            Some(t) => {
                for (flag, &act) in active.iter_mut().zip(t.activeness()) {
                    let draw: f64 = rng.sample(Open01);
                    *flag = draw <= act;
                }
                Some(active.as_slice())
            }
            None => None,
        };
        allocator.allocate_into(mask, rng, partition)?;
        apply_majority(current, next, partition, self.config.tie_rule, rng);
        if let Some(t) = traits {
            let stub = t.stubbornness();
            for group in &partition.groups {
                let draw: f64 = rng.sample(Open01);
                for &v in group.members() {
                    if stub[v as usize] > draw {
                        next.set(v, current.get(v));
                    }
                }
            }
        }
        Ok(())
    }

    /// One round.
    pub fn step<R: Rng + ?Sized>(
        &mut self,
        c: &Coloring,
        traits: Option<&NodeTraits>,
        rng: &mut R,
    ) -> Result<Coloring> {
        self.check_inputs(c, traits)?;
        let mut next = c.clone();
        match &mut self.rounds {
            Rounds::Local(local) => {
                let key = rng.random::<u64>();
                local.reset(c);
                local.round(&mut next, key, 0);
            }
            Rounds::Sequential { .. } => self.sequential_round(c, &mut next, traits, rng)?,
        }
        Ok(next)
    }

    /// Rounds until monochromatic or `max_rounds` have been played.
    pub fn run<R: Rng + ?Sized>(
        &mut self,
        c0: &Coloring,
        traits: Option<&NodeTraits>,
        rng: &mut R,
        max_rounds: u64,
    ) -> Result<RunResult> {
        self.check_inputs(c0, traits)?;
        let mut current = c0.clone();
        let mut next = c0.clone();
        let mut trajectory = vec![current.blue_count() as u32];
        let mut rounds = 0u64;
        if let Rounds::Local(local) = &mut self.rounds {
            let key = rng.random::<u64>();
            local.reset(&current);
            while !current.is_monochromatic() && rounds < max_rounds {
                local.round(&mut current, key, rounds);
                rounds += 1;
                trajectory.push(current.blue_count() as u32);
            }
        } else {
            while !current.is_monochromatic() && rounds < max_rounds {
                self.sequential_round(&current, &mut next, traits, rng)?;
                std::mem::swap(&mut current, &mut next);
                rounds += 1;
                trajectory.push(current.blue_count() as u32);
            }
        }
        Ok(RunResult {
            rounds_elapsed: rounds,
            converged: current.is_monochromatic(),
            trajectory,
            final_coloring: current,
        })
    }
}

/// One round on `g`. Builds a fresh [`Simulator`]; prefer the simulator for
/// repeated rounds.
pub fn step<R: Rng + ?Sized>(
    g: &Graph,
    c: &Coloring,
    config: DynamicsConfig,
    traits: Option<&NodeTraits>,
    rng: &mut R,
) -> Result<Coloring> {
    Simulator::new(g, config)?.step(c, traits, rng)
}

/// Run until absorption or `max_rounds`.
pub fn run<R: Rng + ?Sized>(
    g: &Graph,
    c0: &Coloring,
    config: DynamicsConfig,
    traits: Option<&NodeTraits>,
    rng: &mut R,
    max_rounds: u64,
) -> Result<RunResult> {
    Simulator::new(g, config)?.run(c0, traits, rng, max_rounds)
}
