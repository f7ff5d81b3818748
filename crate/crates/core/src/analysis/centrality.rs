use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;

use crate::graph::{bfs_distances, Graph, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    Degree,
    Betweenness,
    Closeness,
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Measure::Degree => "degree",
            Measure::Betweenness => "betweenness",
            Measure::Closeness => "closeness",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CentralityVector {
    pub measure: Measure,
    pub scores: Vec<f64>,
}

pub fn degree_centrality(g: &Graph) -> CentralityVector {
    CentralityVector {
        measure: Measure::Degree,
        scores: g.nodes().map(|v| g.degree(v) as f64).collect(),
    }
}

// Sources are split into fixed-size blocks; each block is accumulated
// sequentially and blocks are summed in index order, so the floating-point
// result does not depend on thread scheduling.
const SOURCE_BLOCK: usize = 64;

/// Unnormalized betweenness over unordered pairs, via Brandes' accumulation.
pub fn betweenness_centrality(g: &Graph) -> CentralityVector {
    let n = g.node_count();
    let blocks: Vec<Vec<f64>> = (0..n)
        .collect::<Vec<_>>()
        .par_chunks(SOURCE_BLOCK)
        .map(|sources| {
            let mut acc = vec![0.0; n];
            let mut scratch = BrandesScratch::new(n);
            for &s in sources {
                scratch.accumulate(g, s as NodeId, &mut acc);
            }
            acc
        })
        .collect();
    let mut scores = vec![0.0; n];
    for block in blocks {
        for (total, x) in scores.iter_mut().zip(block) {
            *total += x;
        }
    }
    // every unordered pair was visited from both ends
    for x in &mut scores {
        *x /= 2.0;
    }
    CentralityVector {
        measure: Measure::Betweenness,
        scores,
    }
}

struct BrandesScratch {
    sigma: Vec<f64>,
    dist: Vec<u32>,
    delta: Vec<f64>,
    order: Vec<NodeId>,
    queue: VecDeque<NodeId>,
}

impl BrandesScratch {
    fn new(n: usize) -> Self {
        BrandesScratch {
            sigma: vec![0.0; n],
            dist: vec![u32::MAX; n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
            queue: VecDeque::with_capacity(n),
        }
    }

    fn accumulate(&mut self, g: &Graph, s: NodeId, acc: &mut [f64]) {
        self.sigma.fill(0.0);
        self.dist.fill(u32::MAX);
        self.delta.fill(0.0);
        self.order.clear();

        self.sigma[s as usize] = 1.0;
        self.dist[s as usize] = 0;
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            self.order.push(v);
            let dv = self.dist[v as usize];
            for &w in g.neighbors(v) {
                let w = w as usize;
                if self.dist[w] == u32::MAX {
                    self.dist[w] = dv + 1;
                    self.queue.push_back(w as NodeId);
                }
                if self.dist[w] == dv + 1 {
                    self.sigma[w] += self.sigma[v as usize];
                }
            }
        }
        // predecessors are recovered from distances instead of stored lists
        for &w in self.order.iter().rev() {
            let w = w as usize;
            let dw = self.dist[w];
            for &v in g.neighbors(w as NodeId) {
                let v = v as usize;
                if self.dist[v] + 1 == dw {
                    self.delta[v] += self.sigma[v] / self.sigma[w] * (1.0 + self.delta[w]);
                }
            }
            if w != s as usize {
                acc[w] += self.delta[w];
            }
        }
    }
}

/// `(n - 1) / sum of distances`. A single-node graph scores 1.
pub fn closeness_centrality(g: &Graph) -> CentralityVector {
    let n = g.node_count();
    let scores = (0..n as NodeId)
        .into_par_iter()
        .map(|v| {
            if n == 1 {
                return 1.0;
            }
            let row = bfs_distances(g, v).expect("node in range");
            let total: u64 = row.dist.iter().map(|&d| d as u64).sum();
            (n - 1) as f64 / total as f64
        })
        .collect();
    CentralityVector {
        measure: Measure::Closeness,
        scores,
    }
}
