//! Exact checks against brute-force reference implementations.

mod common;

use common::{
    betweenness_oracle, closeness_oracle, complete, edge_list, example_graph, expansion_oracle, q_to_f64,
    random_connected, Q,
};
use ggm_core::analysis::{exact_expansion, ExactExpansion};
use ggm_core::{
    betweenness_centrality, closeness_centrality, degree_centrality, edge_expansion, enumerate_cliques,
    vertex_expansion, Graph, NodeId,
};
#[test]
fn example_graph_clique_list() {
    let listed: Vec<Vec<NodeId>> = vec![
        vec![1], vec![2], vec![3], vec![4], vec![5], vec![6],
        vec![1, 2], vec![1, 3], vec![1, 5], vec![2, 5], vec![3, 4], vec![4, 5], vec![4, 6], vec![5, 6],
        vec![1, 2, 5], vec![4, 5, 6],
    ];
    let mut expected: Vec<Vec<NodeId>> =
        listed.into_iter().map(|c| c.into_iter().map(|v| v - 1).collect()).collect();
    expected.sort();
    let found: Vec<Vec<NodeId>> = enumerate_cliques(&example_graph(), None, 3)
        .unwrap()
        .iter()
        .map(|c| c.members().to_vec())
        .collect();
    assert_eq!(found.len(), 16);
    assert_eq!(found, expected);
}

fn brute_force_cliques(g: &Graph, r: usize) -> Vec<Vec<NodeId>> {
    let n = g.node_count();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let members: Vec<NodeId> = (0..n as NodeId).filter(|&v| mask >> v & 1 == 1).collect();
        if members.len() > r {
            continue;
        }
        let is_clique = members
            .iter()
            .enumerate()
            .all(|(i, &u)| members[i + 1..].iter().all(|&v| g.has_edge(u, v)));
        if is_clique {
            out.push(members);
        }
    }
    out.sort();
    out
}

#[test]
fn clique_enumeration_matches_subset_scan() {
    for seed in 0..40 {
        let n = 3 + seed as usize % 8;
        let g = random_connected(n, 0.45, seed);
        for r in [3, 4] {
            let found: Vec<Vec<NodeId>> = enumerate_cliques(&g, None, r)
                .unwrap()
                .iter()
                .map(|c| c.members().to_vec())
                .collect();
            assert_eq!(found, brute_force_cliques(&g, r), "seed {seed} r {r}");
        }
    }
}

#[test]
fn centrality_matches_rational_oracle() {
    for seed in 0..50u64 {
        let n = 2 + (seed as usize * 7) % 9;
        let p = [0.1, 0.3, 0.6][seed as usize % 3];
        let g = random_connected(n, p, 1000 + seed);
        let bc = betweenness_centrality(&g).scores;
        let cc = closeness_centrality(&g).scores;
        for (v, q) in betweenness_oracle(&g).into_iter().enumerate() {
            assert!((bc[v] - q_to_f64(q)).abs() <= 1e-12 * q_to_f64(q).max(1.0), "seed {seed} node {v}: {} vs {q}", bc[v]);
        }
        for (v, q) in closeness_oracle(&g).into_iter().enumerate() {
            assert_eq!(cc[v], q_to_f64(q), "seed {seed} node {v}");
        }
        let deg = degree_centrality(&g).scores;
        assert!(g.nodes().all(|v| deg[v as usize] == g.degree(v) as f64));
    }
}

fn as_q(e: &ExactExpansion) -> (Q, Q) {
    (
        Q::new(e.vertex.boundary as i64, e.vertex.size as i64),
        Q::new(e.edge.boundary as i64, e.edge.size as i64),
    )
}

#[test]
fn expansion_matches_subset_scan() {
    let mut graphs: Vec<Graph> = (0..30u64)
        .map(|seed| random_connected(3 + seed as usize % 14, [0.05, 0.2, 0.5][seed as usize % 3], 50 + seed))
        .collect();
    graphs.push(complete(6));
    graphs.push(complete(16));
    graphs.push(example_graph());
    for g in &graphs {
        let oracle = expansion_oracle(g);
        let (qv, qe) = as_q(&exact_expansion(g).unwrap());
        assert_eq!((qv, qe), (oracle.vertex, oracle.edge), "n = {}", g.node_count());
        assert_eq!(vertex_expansion(g).unwrap(), q_to_f64(oracle.vertex));
        assert_eq!(edge_expansion(g).unwrap(), q_to_f64(oracle.edge));
    }
}

#[test]
fn adding_an_edge_never_lowers_edge_expansion() {
    for seed in 0..25u64 {
        let n = 4 + seed as usize % 9;
        let g = random_connected(n, 0.2, 300 + seed);
        let before = as_q(&exact_expansion(&g).unwrap()).1;
        let existing = edge_list(&g);
        for u in 0..n as NodeId {
            for v in u + 1..n as NodeId {
                if g.has_edge(u, v) {
                    continue;
                }
                let mut edges = existing.clone();
                edges.push((u, v));
                let h = Graph::from_edges(n, edges).unwrap();
                let after = as_q(&exact_expansion(&h).unwrap()).1;
                assert!(after >= before, "seed {seed}: adding ({u},{v}) lowered h");
            }
        }
    }
}

#[test]
fn expansion_range_errors() {
    assert!(edge_expansion(&complete(2)).is_err());
    assert!(vertex_expansion(&complete(25)).is_err());
}
