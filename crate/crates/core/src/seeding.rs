//! Initial colorings: random seeds, ranked seed selection and the two
//! structured cycle layouts.

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;

use crate::analysis::{betweenness_centrality, closeness_centrality, degree_centrality};
use crate::dynamics::{Coloring, NodeTraits};
use crate::error::{invalid, GgmError, Result};
use crate::graph::{Graph, NodeId};

/// Score used to rank nodes for seeding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    Degree,
    Betweenness,
    Closeness,
    Activeness,
    Stubbornness,
    CombinedRank,
}

impl Criterion {
    pub fn needs_traits(self) -> bool {
        matches!(
            self,
            Criterion::Activeness | Criterion::Stubbornness | Criterion::CombinedRank
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StrategyKind {
    Random,
    Ranked(Criterion),
    /// Blue on the contiguous arc `0..ceil(n/2)` of a labelled cycle.
    CycleBlock,
    /// Blue on the even ids of a labelled cycle.
    CycleAlternating,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 9] = [
        StrategyKind::Random,
        StrategyKind::Ranked(Criterion::Degree),
        StrategyKind::Ranked(Criterion::Betweenness),
        StrategyKind::Ranked(Criterion::Closeness),
        StrategyKind::Ranked(Criterion::Activeness),
        StrategyKind::Ranked(Criterion::Stubbornness),
        StrategyKind::Ranked(Criterion::CombinedRank),
        StrategyKind::CycleBlock,
        StrategyKind::CycleAlternating,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::Random => "random",
            StrategyKind::Ranked(Criterion::Degree) => "degree",
            StrategyKind::Ranked(Criterion::Betweenness) => "betweenness",
            StrategyKind::Ranked(Criterion::Closeness) => "closeness",
            StrategyKind::Ranked(Criterion::Activeness) => "activeness",
            StrategyKind::Ranked(Criterion::Stubbornness) => "stubbornness",
            StrategyKind::Ranked(Criterion::CombinedRank) => "combined",
            StrategyKind::CycleBlock => "cycle-block",
            StrategyKind::CycleAlternating => "cycle-alt",
        }
    }

    pub fn needs_traits(self) -> bool {
        matches!(self, StrategyKind::Ranked(c) if c.needs_traits())
    }

    pub fn is_structured(self) -> bool {
        matches!(self, StrategyKind::CycleBlock | StrategyKind::CycleAlternating)
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyKind {
    type Err = GgmError;

    fn from_str(s: &str) -> Result<Self> {
        StrategyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| GgmError::InvalidArgument(format!("unknown strategy '{s}'")))
    }
}

/// A strategy with its initial blue ratio.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeedStrategy {
    pub kind: StrategyKind,
    pub alpha: f64,
}

impl SeedStrategy {
    pub fn new(kind: StrategyKind, alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return invalid(format!("alpha must lie in [0, 1], got {alpha}"));
        }
        if kind.is_structured() && alpha != 0.5 {
            return invalid(format!("{kind} fixes alpha = 0.5"));
        }
        Ok(SeedStrategy { kind, alpha })
    }

    pub fn cycle_block() -> Self {
        SeedStrategy {
            kind: StrategyKind::CycleBlock,
            alpha: 0.5,
        }
    }

    pub fn cycle_alternating() -> Self {
        SeedStrategy {
            kind: StrategyKind::CycleAlternating,
            alpha: 0.5,
        }
    }
}

/// Number of initial Blue nodes, `ceil(alpha * n)`.
///
/// Products within 1e-9 of an integer count as that integer, so that for
/// instance `0.3 * 10` gives 3 despite binary rounding.
pub fn seed_count(alpha: f64, n: usize) -> usize {
    let x = alpha * n as f64;
    let nearest = x.round();
    let k = if (x - nearest).abs() < 1e-9 { nearest } else { x.ceil() };
    (k.max(0.0) as usize).min(n)
}

/// Nodes in descending score order, ties broken by ascending id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedList {
    pub nodes: Vec<NodeId>,
}

impl RankedList {
    pub fn from_scores(scores: &[f64]) -> Self {
        let mut nodes: Vec<NodeId> = (0..scores.len() as NodeId).collect();
        nodes.sort_by(|&a, &b| scores[b as usize].total_cmp(&scores[a as usize]).then(a.cmp(&b)));
        RankedList { nodes }
    }

    /// Coloring with the first `ceil(alpha * n)` nodes Blue.
    pub fn seed_prefix(&self, alpha: f64) -> Coloring {
        let n = self.nodes.len();
        Coloring::with_blue(n, self.nodes[..seed_count(alpha, n)].iter().copied())
    }
}

/// `sqrt(d(v)) * sqrt(act(v)) * stub(v)^3` for every node.
pub fn combined_rank(g: &Graph, traits: &NodeTraits) -> Result<Vec<f64>> {
    check_traits(g, traits)?;
    Ok(g.nodes()
        .map(|v| {
            let i = v as usize;
            (g.degree(v) as f64).sqrt() * traits.activeness()[i].sqrt() * traits.stubbornness()[i].powi(3)
        })
        .collect())
}

fn check_traits(g: &Graph, traits: &NodeTraits) -> Result<()> {
    if traits.len() != g.node_count() {
        return invalid(format!(
            "traits cover {} nodes, graph has {}",
            traits.len(),
            g.node_count()
        ));
    }
    Ok(())
}

fn require_traits<'t>(criterion: Criterion, traits: Option<&'t NodeTraits>) -> Result<&'t NodeTraits> {
    traits.ok_or_else(|| GgmError::InvalidArgument(format!("{criterion:?} ranking needs node traits")))
}

pub fn rank_nodes(criterion: Criterion, g: &Graph, traits: Option<&NodeTraits>) -> Result<RankedList> {
    let scores = match criterion {
        Criterion::Degree => degree_centrality(g).scores,
        Criterion::Betweenness => betweenness_centrality(g).scores,
        Criterion::Closeness => closeness_centrality(g).scores,
        Criterion::Activeness => {
            let t = require_traits(criterion, traits)?;
            check_traits(g, t)?;
            t.activeness().to_vec()
        }
        Criterion::Stubbornness => {
            let t = require_traits(criterion, traits)?;
            check_traits(g, t)?;
            t.stubbornness().to_vec()
        }
        Criterion::CombinedRank => combined_rank(g, require_traits(criterion, traits)?)?,
    };
    Ok(RankedList::from_scores(&scores))
}

/// Initial coloring with exactly `ceil(alpha * n)` Blue nodes. Only the
/// `Random` strategy consumes randomness.
pub fn select_seeds<R: Rng + ?Sized>(
    strategy: &SeedStrategy,
    g: &Graph,
    traits: Option<&NodeTraits>,
    rng: &mut R,
) -> Result<Coloring> {
    let n = g.node_count();
    match strategy.kind {
        StrategyKind::Random => {
            let k = seed_count(strategy.alpha, n);
            let picked = index::sample(rng, n, k);
            Ok(Coloring::with_blue(n, picked.iter().map(|v| v as NodeId)))
        }
        StrategyKind::Ranked(criterion) => Ok(rank_nodes(criterion, g, traits)?.seed_prefix(strategy.alpha)),
        StrategyKind::CycleBlock | StrategyKind::CycleAlternating => {
            if !g.is_labelled_cycle() {
                return invalid(format!("{} needs a labelled cycle graph", strategy.kind));
            }
            let half = n.div_ceil(2) as NodeId;
            Ok(if strategy.kind == StrategyKind::CycleBlock {
                Coloring::with_blue(n, 0..half)
            } else {
                Coloring::with_blue(n, (0..half).map(|i| 2 * i))
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind};
    use crate::rng::rng_from_seed;

    fn star(leaves: u32) -> Graph {
        Graph::from_edges(leaves as usize + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    #[test]
    fn ceiling_count() {
        assert_eq!(seed_count(0.45, 10), 5);
        assert_eq!(seed_count(0.3, 10), 3);
        assert_eq!(seed_count(0.0, 10), 0);
        assert_eq!(seed_count(1.0, 7), 7);
        assert_eq!(seed_count(0.2, 5), 1);
        assert_eq!(seed_count(0.21, 5), 2);
    }

    #[test]
    fn star_degree_ranking() {
        let g = star(4);
        assert_eq!(rank_nodes(Criterion::Degree, &g, None).unwrap().nodes[0], 0);
        let s = SeedStrategy::new(StrategyKind::Ranked(Criterion::Degree), 0.2).unwrap();
        let c = select_seeds(&s, &g, None, &mut rng_from_seed(0)).unwrap();
        assert_eq!(c.blue_nodes(), vec![0]);
    }

    #[test]
    fn ties_broken_by_id() {
        assert_eq!(RankedList::from_scores(&[1.0, 3.0, 3.0, 0.5]).nodes, vec![1, 2, 0, 3]);
    }

    #[test]
    fn activeness_ranking() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let t = NodeTraits::new(vec![0.9, 0.1, 0.5], vec![0.0; 3]).unwrap();
        assert_eq!(rank_nodes(Criterion::Activeness, &g, Some(&t)).unwrap().nodes, vec![0, 2, 1]);
        assert!(rank_nodes(Criterion::Activeness, &g, None).is_err());
        assert!(rank_nodes(Criterion::CombinedRank, &g, None).is_err());
    }

    #[test]
    fn combined_rank_arithmetic() {
        // node 0 has degree 4
        let g = star(4);
        let t = NodeTraits::new(vec![0.25, 1.0, 0.3, 0.3, 0.3], vec![0.5, 1.0, 0.0, 0.2, 0.2]).unwrap();
        let r = combined_rank(&g, &t).unwrap();
        assert!((r[0] - 0.125).abs() < 1e-15);
        assert_eq!(r[1], 1.0);
        assert_eq!(r[2], 0.0);
    }

    #[test]
    fn cycle_layouts() {
        let c8 = generate(GraphKind::Cycle, 8, &mut rng_from_seed(0)).unwrap();
        let alt = select_seeds(&SeedStrategy::cycle_alternating(), &c8, None, &mut rng_from_seed(0)).unwrap();
        assert_eq!(alt.blue_nodes(), vec![0, 2, 4, 6]);
        let block = select_seeds(&SeedStrategy::cycle_block(), &c8, None, &mut rng_from_seed(0)).unwrap();
        assert_eq!(block.blue_nodes(), vec![0, 1, 2, 3]);

        let c7 = generate(GraphKind::Cycle, 7, &mut rng_from_seed(0)).unwrap();
        let alt = select_seeds(&SeedStrategy::cycle_alternating(), &c7, None, &mut rng_from_seed(0)).unwrap();
        assert_eq!(alt.blue_nodes(), vec![0, 2, 4, 6]);

        let k5 = generate(GraphKind::Complete, 5, &mut rng_from_seed(0)).unwrap();
        assert!(select_seeds(&SeedStrategy::cycle_block(), &k5, None, &mut rng_from_seed(0)).is_err());
        assert!(SeedStrategy::new(StrategyKind::CycleBlock, 0.3).is_err());
        assert!(SeedStrategy::new(StrategyKind::Random, 1.2).is_err());
    }

    #[test]
    fn random_inclusion_is_uniform() {
        let g = generate(GraphKind::Complete, 10, &mut rng_from_seed(0)).unwrap();
        let s = SeedStrategy::new(StrategyKind::Random, 0.3).unwrap();
        let mut counts = [0usize; 10];
        let mut rng = rng_from_seed(2024);
        let draws = 100_000;
        for _ in 0..draws {
            let c = select_seeds(&s, &g, None, &mut rng).unwrap();
            assert_eq!(c.blue_count(), 3);
            for v in c.blue_nodes() {
                counts[v as usize] += 1;
            }
        }
        for c in counts {
            let f = c as f64 / draws as f64;
            assert!((f - 0.3).abs() <= 0.01, "inclusion {f}");
        }
    }

    #[test]
    fn strategy_names_round_trip() {
        for k in StrategyKind::ALL {
            assert_eq!(k.name().parse::<StrategyKind>().unwrap(), k);
        }
        assert!("pagerank".parse::<StrategyKind>().is_err());
    }
}
