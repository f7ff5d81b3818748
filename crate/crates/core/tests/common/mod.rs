#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use ggm_core::{enumerate_cliques, rng_from_seed, Graph, NodeId};
use num_rational::Ratio;
use rand::Rng;

pub type Q = Ratio<i64>;
pub type Outcome = Vec<Vec<NodeId>>;

/// The six-node example graph with its 1-based labels shifted down by one.
pub fn example_graph() -> Graph {
    let edges = [(1, 2), (1, 3), (1, 5), (2, 5), (3, 4), (4, 5), (4, 6), (5, 6)];
    Graph::from_edges(6, edges.iter().map(|&(u, v)| (u - 1, v - 1))).unwrap()
}

pub fn complete(n: u32) -> Graph {
    Graph::from_edges(n as usize, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// Random spanning tree plus each remaining pair with probability `p`.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::new();
    for v in 1..n as NodeId {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n as NodeId {
        for v in u + 1..n as NodeId {
            if !edges.contains(&(u, v)) && rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn edge_list(g: &Graph) -> Vec<(NodeId, NodeId)> {
    g.edges().collect()
}

pub fn bfs(g: &Graph, s: NodeId) -> (Vec<i64>, Vec<i64>) {
    let n = g.node_count();
    let mut dist = vec![-1i64; n];
    let mut paths = vec![0i64; n];
    dist[s as usize] = 0;
    paths[s as usize] = 1;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w as usize] < 0 {
                dist[w as usize] = dist[u as usize] + 1;
                queue.push_back(w);
            }
            if dist[w as usize] == dist[u as usize] + 1 {
                paths[w as usize] += paths[u as usize];
            }
        }
    }
    (dist, paths)
}

/// Pair-dependency sums over unordered pairs, as exact fractions.
pub fn betweenness_oracle(g: &Graph) -> Vec<Q> {
    let n = g.node_count();
    let table: Vec<(Vec<i64>, Vec<i64>)> = (0..n as NodeId).map(|s| bfs(g, s)).collect();
    let mut out = vec![Q::from_integer(0); n];
    for s in 0..n {
        for t in s + 1..n {
            let (ds, ps) = &table[s];
            let (dt, pt) = &table[t];
            for v in (0..n).filter(|&v| v != s && v != t) {
                if ds[v] + dt[v] == ds[t] {
                    out[v] += Q::new(ps[v] * pt[v], ps[t]);
                }
            }
        }
    }
    out
}

pub fn closeness_oracle(g: &Graph) -> Vec<Q> {
    let n = g.node_count() as i64;
    (0..n as NodeId)
        .map(|v| {
            if n == 1 {
                return Q::from_integer(1);
            }
            let total: i64 = bfs(g, v).0.iter().sum();
            Q::new(n - 1, total)
        })
        .collect()
}

pub fn q_to_f64(q: Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

pub struct Brute {
    pub vertex: Q,
    pub edge: Q,
}

pub fn expansion_oracle(g: &Graph) -> Brute {
    let n = g.node_count();
    let mut best_v: Option<Q> = None;
    let mut best_e: Option<Q> = None;
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if 2 * size >= n {
            continue;
        }
        let inside = |v: NodeId| mask >> v & 1 == 1;
        let mut outer = 0i64;
        let mut cut = 0i64;
        for v in 0..n as NodeId {
            if inside(v) {
                cut += g.neighbors(v).iter().filter(|&&u| !inside(u)).count() as i64;
            } else if g.neighbors(v).iter().any(|&u| inside(u)) {
                outer += 1;
            }
        }
        let (qv, qe) = (Q::new(outer, size as i64), Q::new(cut, size as i64));
        best_v = Some(best_v.map_or(qv, |b| b.min(qv)));
        best_e = Some(best_e.map_or(qe, |b| b.min(qe)));
    }
    Brute {
        vertex: best_v.unwrap(),
        edge: best_e.unwrap(),
    }
}

/// Exact outcome distribution of the sequential pick process, by walking
/// every pick sequence.
pub fn pick_oracle(g: &Graph, r: usize) -> HashMap<Outcome, f64> {
    let cliques: Vec<Vec<NodeId>> = enumerate_cliques(g, None, r)
        .unwrap()
        .iter()
        .map(|c| c.members().to_vec())
        .collect();
    let mut dist = HashMap::new();
    let alive: Vec<usize> = (0..cliques.len()).collect();
    walk(&cliques, alive, Vec::new(), 1.0, &mut dist);
    dist
}

fn walk(cliques: &[Vec<NodeId>], alive: Vec<usize>, chosen: Vec<usize>, prob: f64, dist: &mut HashMap<Outcome, f64>) {
    if alive.is_empty() {
        let mut groups: Outcome = chosen.iter().map(|&c| cliques[c].clone()).collect();
        groups.sort();
        *dist.entry(groups).or_insert(0.0) += prob;
        return;
    }
    let share = prob / alive.len() as f64;
    for &pick in &alive {
        let rest: Vec<usize> = alive
            .iter()
            .copied()
            .filter(|&c| !cliques[c].iter().any(|v| cliques[pick].contains(v)))
            .collect();
        let mut next = chosen.clone();
        next.push(pick);
        walk(cliques, rest, next, share, dist);
    }
}

