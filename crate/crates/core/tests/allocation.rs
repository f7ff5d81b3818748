//! Group allocation: validity and agreement with the pick-and-eliminate
//! distribution, for every sampler.

mod common;

use std::collections::HashMap;

use common::{complete, example_graph, pick_oracle, random_connected, Outcome};
use ggm_core::rng::child_seed;
use ggm_core::{
    rng_from_seed, DynamicsConfig, Engine, Graph, GroupAllocator, NodeId, Partition,
    Simulator,
};
use proptest::prelude::*;

fn outcome(p: &Partition) -> Outcome {
    p.canonical().iter().map(|c| c.members().to_vec()).collect()
}

fn check_against_oracle(name: &str, oracle: &HashMap<Outcome, f64>, samples: &[Outcome], sigmas: f64) {
    let n = samples.len() as f64;
    let mut counts: HashMap<&Outcome, usize> = HashMap::new();
    for s in samples {
        assert!(oracle.contains_key(s), "{name}: impossible outcome {s:?}");
        *counts.entry(s).or_insert(0) += 1;
    }
    for (o, &p) in oracle {
        let freq = counts.get(o).copied().unwrap_or(0) as f64 / n;
        let se = (p * (1.0 - p) / n).sqrt();
        assert!(
            (freq - p).abs() <= sigmas * se,
            "{name}: outcome {o:?} frequency {freq:.5}, expected {p:.5} (se {se:.5})"
        );
    }
}

fn sample_sequential(alloc: &mut GroupAllocator, draws: u64) -> Vec<Outcome> {
    (0..draws)
        .map(|seed| outcome(&alloc.allocate(None, &mut rng_from_seed(seed)).unwrap()))
        .collect()
}

const LOCAL_KEYS: u64 = 0x5EED;

fn sample_local(g: &Graph, r: usize, draws: u64) -> Vec<Outcome> {
    let cfg = DynamicsConfig {
        max_group_size: r,
        engine: Engine::Local,
        ..DynamicsConfig::default()
    };
    let mut sim = Simulator::new(g, cfg).unwrap();
    (0..draws)
        .map(|i| outcome(&sim.local_partition(child_seed(LOCAL_KEYS, i), i % 7).unwrap()))
        .collect()
}

#[test]
fn k3_distribution_matches_pick_oracle() {
    let g = complete(3);
    let oracle = pick_oracle(&g, 3);
    // one triangle, three edge+singleton splits, all singletons
    assert_eq!(oracle.len(), 5);
    let whole = oracle[&vec![vec![0, 1, 2]]];
    assert!((whole - 1.0 / 7.0).abs() < 1e-12);
    let draws = 100_000;
    check_against_oracle("explicit", &oracle, &sample_sequential(&mut GroupAllocator::explicit(&g, 3).unwrap(), draws), 3.0);
    let mut closed = GroupAllocator::new(&g, 3).unwrap();
    assert!(closed.clique_count().is_none());
    check_against_oracle("closed form", &oracle, &sample_sequential(&mut closed, draws), 3.0);
    check_against_oracle("local", &oracle, &sample_local(&g, 3, 2 * draws), 3.0);
}

#[test]
fn k4_distribution_matches_pick_oracle() {
    let g = complete(4);
    for r in [3, 4] {
        let oracle = pick_oracle(&g, r);
        let draws = 100_000;
        check_against_oracle("explicit", &oracle, &sample_sequential(&mut GroupAllocator::explicit(&g, r).unwrap(), draws), 4.0);
        check_against_oracle("closed form", &oracle, &sample_sequential(&mut GroupAllocator::new(&g, r).unwrap(), draws), 4.0);
        check_against_oracle("local", &oracle, &sample_local(&g, r, draws), 4.0);
    }
}

#[test]
fn example_graph_distribution_matches_pick_oracle() {
    let g = example_graph();
    let oracle = pick_oracle(&g, 3);
    let total: f64 = oracle.values().sum();
    assert!((total - 1.0).abs() < 1e-9);
    assert!(oracle.contains_key(&vec![vec![0, 1], vec![2], vec![3, 4, 5]]));
    let draws = 100_000;
    check_against_oracle("explicit", &oracle, &sample_sequential(&mut GroupAllocator::new(&g, 3).unwrap(), draws), 4.5);
    check_against_oracle("local", &oracle, &sample_local(&g, 3, draws), 4.5);
}

fn assert_valid(g: &Graph, p: &Partition, active: &[bool], r: usize) {
    let expected: Vec<NodeId> = (0..g.node_count() as NodeId).filter(|&v| active[v as usize]).collect();
    assert_eq!(p.covered(), expected, "groups must cover the active nodes exactly once");
    for group in &p.groups {
        let m = group.members();
        assert!(!m.is_empty() && m.len() <= r);
        for (i, &u) in m.iter().enumerate() {
            assert!(m[i + 1..].iter().all(|&v| g.has_edge(u, v)), "{m:?} is not a clique");
        }
    }
}

#[test]
fn partitions_are_valid_over_a_thousand_seeds() {
    let graphs = [example_graph(), complete(9), random_connected(14, 0.3, 5), random_connected(20, 0.12, 6)];
    for g in &graphs {
        let all = vec![true; g.node_count()];
        for r in [3, 4] {
            let mut alloc = GroupAllocator::new(g, r).unwrap();
            let cfg = DynamicsConfig {
                max_group_size: r,
                engine: Engine::Local,
                ..DynamicsConfig::default()
            };
            let mut sim = Simulator::new(g, cfg).unwrap();
            for seed in 0..1000 {
                assert_valid(g, &alloc.allocate(None, &mut rng_from_seed(seed)).unwrap(), &all, r);
                assert_valid(g, &sim.local_partition(seed, 3).unwrap(), &all, r);
            }
        }
    }
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..18, 0.0f64..0.8, any::<u64>()).prop_map(|(n, p, seed)| random_connected(n, p, seed))
}

proptest! {
    #[test]
    fn partition_of_any_active_set_is_valid(
        g in arb_graph(),
        r in 3usize..=4,
        seed in any::<u64>(),
        mask_bits in any::<u32>(),
        force_explicit in any::<bool>(),
    ) {
        let active: Vec<bool> = (0..g.node_count()).map(|v| mask_bits >> v & 1 == 1).collect();
        let mut alloc = if force_explicit {
            GroupAllocator::explicit(&g, r).unwrap()
        } else {
            GroupAllocator::new(&g, r).unwrap()
        };
        let p = alloc.allocate(Some(&active), &mut rng_from_seed(seed)).unwrap();
        assert_valid(&g, &p, &active, r);
        let again = alloc.allocate(Some(&active), &mut rng_from_seed(seed)).unwrap();
        prop_assert_eq!(p, again);
    }

    #[test]
    fn complete_graph_samplers_agree_on_group_sizes(n in 1u32..12, seed in any::<u64>()) {
        let g = complete(n);
        let p = GroupAllocator::new(&g, 4).unwrap().allocate(None, &mut rng_from_seed(seed)).unwrap();
        assert_valid(&g, &p, &vec![true; n as usize], 4);
    }
}
