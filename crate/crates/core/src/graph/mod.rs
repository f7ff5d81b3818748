//! Immutable simple undirected connected graphs.
//!
//! Adjacency is stored in compressed sparse row form with every neighbor
//! list sorted ascending. All constructors validate simplicity and
//! connectivity, so any `Graph` value can be handed to the dynamics without
//! further checks.

mod generate;
mod io;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, GgmError, Result};

pub use generate::generate;
pub use io::{load_edge_list, read_edge_list_file, write_edge_list, write_label_map, LoadReport, LoadedGraph};

/// Node identifier, dense in `0..n`.
pub type NodeId = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<NodeId>,
    edge_count: usize,
}

impl Graph {
    /// Build a graph on `n` nodes from an edge list.
    ///
    /// Self-loops, duplicate edges and out-of-range endpoints are rejected,
    /// as is a disconnected result.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        if n == 0 {
            return invalid("a graph needs at least one node");
        }
        if n > NodeId::MAX as usize {
            return invalid(format!("node count {n} exceeds the id range"));
        }
        let mut adjacency: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return invalid(format!("edge ({u}, {v}) has an endpoint outside 0..{n}"));
            }
            if u == v {
                return invalid(format!("self-loop at node {u}"));
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return invalid(format!("duplicate edge at node {v}"));
            }
        }
        Self::from_sorted_adjacency(adjacency)
    }

    /// Build from per-node neighbor lists that are already sorted, symmetric
    /// and free of loops or duplicates. Connectivity is still checked.
    pub(crate) fn from_sorted_adjacency(adjacency: Vec<Vec<NodeId>>) -> Result<Self> {
        let n = adjacency.len();
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let total: usize = adjacency.iter().map(Vec::len).sum();
        let mut neighbors = Vec::with_capacity(total);
        for list in &adjacency {
            neighbors.extend_from_slice(list);
            offsets.push(neighbors.len());
        }
        let graph = Graph {
            offsets,
            neighbors,
            edge_count: total / 2,
        };
        debug_assert!(graph.is_symmetric());
        let components = graph.component_count();
        if components != 1 {
            return Err(GgmError::Disconnected { components });
        }
        Ok(graph)
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbor set N(v).
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        let v = v as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        self.nodes().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        0..self.node_count() as NodeId
    }

    /// Edges `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// True when every pair of distinct nodes is adjacent.
    pub fn is_complete(&self) -> bool {
        let n = self.node_count();
        self.edge_count == n * (n - 1) / 2
    }

    /// True for the canonically labelled cycle: n >= 3, every node has
    /// degree 2 and `i` is adjacent to `i + 1 mod n`.
    pub fn is_labelled_cycle(&self) -> bool {
        let n = self.node_count();
        n >= 3
            && self.edge_count == n
            && self.nodes().all(|v| {
                self.degree(v) == 2 && self.has_edge(v, ((v as usize + 1) % n) as NodeId)
            })
    }

    fn is_symmetric(&self) -> bool {
        self.nodes()
            .all(|v| self.neighbors(v).iter().all(|&u| u != v && self.has_edge(u, v)))
    }

    fn component_count(&self) -> usize {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut components = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            stack.push(start as NodeId);
            while let Some(v) = stack.pop() {
                for &u in self.neighbors(v) {
                    if !seen[u as usize] {
                        seen[u as usize] = true;
                        stack.push(u);
                    }
                }
            }
        }
        components
    }
}

/// Unweighted shortest-path distances from one source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceRow {
    pub source: NodeId,
    pub dist: Vec<u32>,
}

/// Breadth-first hop distances from `source`.
pub fn bfs_distances(g: &Graph, source: NodeId) -> Result<DistanceRow> {
    let n = g.node_count();
    if source as usize >= n {
        return invalid(format!("source {source} is outside 0..{n}"));
    }
    let mut dist = vec![u32::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    dist[source as usize] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let next = dist[v as usize] + 1;
        for &u in g.neighbors(v) {
            if dist[u as usize] == u32::MAX {
                dist[u as usize] = next;
                queue.push_back(u);
            }
        }
    }
    Ok(DistanceRow { source, dist })
}

/// The generator families used in the convergence experiments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Cycle,
    Complete,
    TwoCycle,
    RandomCycle,
    TwoCycleConnected,
    TwoCompleteConnected,
}

impl GraphKind {
    pub const ALL: [GraphKind; 6] = [
        GraphKind::Cycle,
        GraphKind::Complete,
        GraphKind::TwoCycle,
        GraphKind::RandomCycle,
        GraphKind::TwoCycleConnected,
        GraphKind::TwoCompleteConnected,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Cycle => "cycle",
            GraphKind::Complete => "complete",
            GraphKind::TwoCycle => "two-cycle",
            GraphKind::RandomCycle => "random-cycle",
            GraphKind::TwoCycleConnected => "tcc",
            GraphKind::TwoCompleteConnected => "tkc",
        }
    }

    /// Whether generation consumes randomness.
    pub fn is_random(self) -> bool {
        matches!(self, GraphKind::RandomCycle)
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphKind {
    type Err = GgmError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cycle" => Ok(GraphKind::Cycle),
            "complete" => Ok(GraphKind::Complete),
            "two-cycle" => Ok(GraphKind::TwoCycle),
            "random-cycle" => Ok(GraphKind::RandomCycle),
            "tcc" | "two-cycle-connected" => Ok(GraphKind::TwoCycleConnected),
            "tkc" | "two-complete-connected" => Ok(GraphKind::TwoCompleteConnected),
            other => invalid(format!("unknown graph kind '{other}'")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: u32) -> Graph {
        Graph::from_edges(n as usize, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn triangle_counts() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.is_complete());
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(3, [(0, 0), (1, 2)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0), (1, 2)]).is_err());
        assert!(Graph::from_edges(2, [(0, 5)]).is_err());
        assert!(matches!(
            Graph::from_edges(4, [(0, 1), (2, 3)]),
            Err(GgmError::Disconnected { components: 2 })
        ));
        assert!(Graph::from_edges(1, []).is_ok());
    }

    #[test]
    fn bfs_on_cycle_complete_and_path() {
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        assert_eq!(bfs_distances(&c6, 0).unwrap().dist, vec![0, 1, 2, 3, 2, 1]);

        let k5 = Graph::from_edges(5, (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v)))).unwrap();
        for s in 0..5 {
            let row = bfs_distances(&k5, s).unwrap();
            assert_eq!(row.dist.iter().filter(|&&d| d == 0).count(), 1);
            assert_eq!(row.dist.iter().filter(|&&d| d == 1).count(), 4);
        }

        assert_eq!(bfs_distances(&path(4), 0).unwrap().dist, vec![0, 1, 2, 3]);
        assert!(bfs_distances(&path(4), 4).is_err());
    }

    #[test]
    fn bfs_respects_edge_lipschitz() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 5), (5, 6), (6, 4)]).unwrap();
        for s in g.nodes() {
            let row = bfs_distances(&g, s).unwrap();
            for (u, v) in g.edges() {
                let (du, dv) = (row.dist[u as usize], row.dist[v as usize]);
                assert!(du <= dv + 1 && dv <= du + 1);
            }
        }
    }

    #[test]
    fn labelled_cycle_detection() {
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert!(c5.is_labelled_cycle());
        // same cycle, scrambled labels
        let scrambled = Graph::from_edges(4, [(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert!(!scrambled.is_labelled_cycle());
        assert!(!path(4).is_labelled_cycle());
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in GraphKind::ALL {
            assert_eq!(kind.name().parse::<GraphKind>().unwrap(), kind);
        }
        assert!("wheel".parse::<GraphKind>().is_err());
    }
}
