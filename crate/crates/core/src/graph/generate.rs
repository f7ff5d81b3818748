use rand::Rng;

use super::{Graph, GraphKind, NodeId};
use crate::error::{invalid, Result};

/// Build a graph of the given family on `n` nodes.
///
/// Only [`GraphKind::RandomCycle`] draws from `rng`; the other kinds are
/// fully determined by `n`.
pub fn generate<R: Rng + ?Sized>(kind: GraphKind, n: usize, rng: &mut R) -> Result<Graph> {
    let min = match kind {
        GraphKind::Cycle => 3,
        GraphKind::Complete => 1,
        GraphKind::TwoCycle | GraphKind::RandomCycle => 6,
        GraphKind::TwoCycleConnected | GraphKind::TwoCompleteConnected => 6,
    };
    if n < min {
        return invalid(format!("{kind} needs n >= {min}, got {n}"));
    }
    let is_two_halves = matches!(
        kind,
        GraphKind::TwoCycleConnected | GraphKind::TwoCompleteConnected
    );
    if is_two_halves && n % 2 != 0 {
        return invalid(format!("{kind} needs an even node count, got {n}"));
    }

    let mut adjacency: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut link = |adj: &mut Vec<Vec<NodeId>>, u: usize, v: usize| {
        adj[u].push(v as NodeId);
        adj[v].push(u as NodeId);
    };
    match kind {
        GraphKind::Cycle => add_cycle(&mut adjacency, 0, n, &mut link),
        GraphKind::Complete => add_clique(&mut adjacency, 0, n, &mut link),
        GraphKind::TwoCycle => {
            add_cycle(&mut adjacency, 0, n, &mut link);
            for i in 0..n {
                link(&mut adjacency, i, (i + 2) % n);
            }
        }
        GraphKind::RandomCycle => {
            add_cycle(&mut adjacency, 0, n, &mut link);
            for v in 0..n {
                let mut added = 0;
                while added < 2 && adjacency[v].len() < n - 1 {
                    let target = rng.random_range(0..n);
                    if target == v || adjacency[v].contains(&(target as NodeId)) {
                        continue;
                    }
                    link(&mut adjacency, v, target);
                    added += 1;
                }
            }
        }
        GraphKind::TwoCycleConnected => {
            let half = n / 2;
            add_cycle(&mut adjacency, 0, half, &mut link);
            add_cycle(&mut adjacency, half, half, &mut link);
            link(&mut adjacency, 0, half);
        }
        GraphKind::TwoCompleteConnected => {
            let half = n / 2;
            add_clique(&mut adjacency, 0, half, &mut link);
            add_clique(&mut adjacency, half, half, &mut link);
            link(&mut adjacency, 0, half);
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    Graph::from_sorted_adjacency(adjacency)
}

fn add_cycle<F>(adj: &mut Vec<Vec<NodeId>>, start: usize, len: usize, link: &mut F)
where
    F: FnMut(&mut Vec<Vec<NodeId>>, usize, usize),
{
    for i in 0..len {
        link(adj, start + i, start + (i + 1) % len);
    }
}

fn add_clique<F>(adj: &mut Vec<Vec<NodeId>>, start: usize, len: usize, link: &mut F)
where
    F: FnMut(&mut Vec<Vec<NodeId>>, usize, usize),
{
    for i in 0..len {
        for j in i + 1..len {
            link(adj, start + i, start + j);
        }
    }
}
