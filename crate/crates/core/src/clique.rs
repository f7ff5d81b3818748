//! Clique enumeration and one round of random group allocation.
//!
//! Group allocation repeatedly picks a clique uniformly from the list of
//! cliques that do not touch an already grouped node, commits it, and stops
//! when every active node is grouped. The cliques left in the list at any
//! moment are exactly the cliques of the subgraph induced by the still
//! ungrouped active nodes, which is what both samplers below rely on:
//!
//! * the explicit sampler keeps the full clique table and rejects picks that
//!   touch a grouped or inactive node, discarding them from the pool as it
//!   meets them;
//! * on complete graphs the induced subgraph on `u` free nodes is `K_u`, so
//!   a size `k` is drawn with weight `C(u, k)` followed by a uniform
//!   `k`-subset. This avoids listing the `C(n, 3)` triangles of large
//!   complete graphs.

use arrayvec::ArrayVec;
use rand::Rng;

use crate::error::{invalid, Result};
use crate::graph::{Graph, NodeId};

/// Largest group size supported by the engine.
pub const MAX_GROUP_SIZE: usize = 4;

/// Validate a maximum group size.
pub fn check_max_group_size(r: usize) -> Result<()> {
    if r == 3 || r == 4 {
        Ok(())
    } else {
        invalid(format!("maximum group size must be 3 or 4, got {r}"))
    }
}

/// A clique of 1 to 4 nodes with ascending members.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clique {
    members: ArrayVec<NodeId, MAX_GROUP_SIZE>,
}

impl Clique {
    /// Build from members in any order. Panics on more than four members.
    pub fn new(members: &[NodeId]) -> Self {
        let mut members: ArrayVec<NodeId, MAX_GROUP_SIZE> = members.iter().copied().collect();
        members.sort_unstable();
        Clique { members }
    }

    pub fn members(&self) -> &[NodeId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// One round's discussion groups.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Partition {
    /// Groups in the order they were committed.
    pub groups: Vec<Clique>,
}

impl Partition {
    /// Sorted list of all grouped nodes.
    pub fn covered(&self) -> Vec<NodeId> {
        let mut nodes: Vec<NodeId> = self
            .groups
            .iter()
            .flat_map(|c| c.members().iter().copied())
            .collect();
        nodes.sort_unstable();
        nodes
    }

    /// Groups sorted by members, for order-insensitive comparison.
    pub fn canonical(&self) -> Vec<Clique> {
        let mut groups = self.groups.clone();
        groups.sort();
        groups
    }
}

fn is_active(active: Option<&[bool]>, v: NodeId) -> bool {
    active.is_none_or(|mask| mask[v as usize])
}

fn check_active(g: &Graph, active: Option<&[bool]>) -> Result<()> {
    match active {
        Some(mask) if mask.len() != g.node_count() => invalid(format!(
            "active mask has length {}, graph has {} nodes",
            mask.len(),
            g.node_count()
        )),
        _ => Ok(()),
    }
}

/// All cliques of size `1..=r` in the subgraph induced by `active`
/// (`None` means every node), in lexicographic order of member lists.
pub fn enumerate_cliques(g: &Graph, active: Option<&[bool]>, r: usize) -> Result<Vec<Clique>> {
    check_max_group_size(r)?;
    check_active(g, active)?;
    let mut out = Vec::new();
    let mut stack: ArrayVec<NodeId, MAX_GROUP_SIZE> = ArrayVec::new();
    for v in g.nodes().filter(|&v| is_active(active, v)) {
        stack.push(v);
        let candidates: Vec<NodeId> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| u > v && is_active(active, u))
            .collect();
        extend_cliques(g, &mut stack, &candidates, r, &mut out);
        stack.pop();
    }
    Ok(out)
}

// Emit the current stack, then recurse into each candidate; candidates are
// ascending common neighbors larger than the last member, which yields
// lexicographic preorder.
fn extend_cliques(
    g: &Graph,
    stack: &mut ArrayVec<NodeId, MAX_GROUP_SIZE>,
    candidates: &[NodeId],
    r: usize,
    out: &mut Vec<Clique>,
) {
    out.push(Clique {
        members: stack.clone(),
    });
    if stack.len() == r {
        return;
    }
    for (i, &u) in candidates.iter().enumerate() {
        stack.push(u);
        let next: Vec<NodeId> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|&w| g.has_edge(u, w))
            .collect();
        extend_cliques(g, stack, &next, r, out);
        stack.pop();
    }
}

enum Sampler {
    Explicit { cliques: Vec<Clique>, pool: Vec<u32> },
    Complete { free: Vec<NodeId> },
}

/// Reusable group allocator for one graph and maximum group size.
///
/// Complete graphs use the closed-form sampler; every other graph gets an
/// explicit clique table built once at construction.
pub struct GroupAllocator<'g> {
    graph: &'g Graph,
    max_size: usize,
    sampler: Sampler,
    grouped: Vec<bool>,
}

impl<'g> GroupAllocator<'g> {
    pub fn new(graph: &'g Graph, max_size: usize) -> Result<Self> {
        check_max_group_size(max_size)?;
        if graph.is_complete() {
            Ok(Self::with_sampler(graph, max_size, Sampler::Complete { free: Vec::new() }))
        } else {
            Self::explicit(graph, max_size)
        }
    }

    /// Force the explicit clique-table sampler, even on complete graphs.
    pub fn explicit(graph: &'g Graph, max_size: usize) -> Result<Self> {
        let cliques = enumerate_cliques(graph, None, max_size)?;
        Self::from_cliques(graph, max_size, cliques)
    }

    pub(crate) fn from_cliques(graph: &'g Graph, max_size: usize, cliques: Vec<Clique>) -> Result<Self> {
        if cliques.len() > u32::MAX as usize {
            return invalid("clique table exceeds 2^32 entries");
        }
        Ok(Self::with_sampler(
            graph,
            max_size,
            Sampler::Explicit {
                cliques,
                pool: Vec::new(),
            },
        ))
    }

    fn with_sampler(graph: &'g Graph, max_size: usize, sampler: Sampler) -> Self {
        GroupAllocator {
            graph,
            max_size,
            sampler,
            grouped: vec![false; graph.node_count()],
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    /// Number of cliques in the explicit table, `None` for the closed-form sampler.
    pub fn clique_count(&self) -> Option<usize> {
        match &self.sampler {
            Sampler::Explicit { cliques, .. } => Some(cliques.len()),
            Sampler::Complete { .. } => None,
        }
    }

    /// Partition the active nodes into random cliques, writing into `out`.
    pub fn allocate_into<R: Rng + ?Sized>(
        &mut self,
        active: Option<&[bool]>,
        rng: &mut R,
        out: &mut Partition,
    ) -> Result<()> {
        check_active(self.graph, active)?;
        out.groups.clear();
        let n = self.graph.node_count();
        let mut free_count = 0usize;
        for v in 0..n {
            let on = active.is_none_or(|mask| mask[v]);
            self.grouped[v] = !on;
            free_count += usize::from(on);
        }
        let active_count = free_count;
        let mut commits = 0usize;

        match &mut self.sampler {
            Sampler::Explicit { cliques, pool } => {
                pool.clear();
                pool.extend(0..cliques.len() as u32);
                while free_count > 0 {
                    let i = rng.random_range(0..pool.len());
                    let clique = &cliques[pool[i] as usize];
                    pool.swap_remove(i);
                    if clique.members().iter().any(|&v| self.grouped[v as usize]) {
                        continue;
                    }
                    for &v in clique.members() {
                        self.grouped[v as usize] = true;
                    }
                    free_count -= clique.len();
                    out.groups.push(clique.clone());
                    commits += 1;
                }
            }
            Sampler::Complete { free } => {
                free.clear();
                free.extend((0..n as NodeId).filter(|&v| !self.grouped[v as usize]));
                while !free.is_empty() {
                    let size = draw_group_size(free.len(), self.max_size, rng);
                    let mut members: ArrayVec<NodeId, MAX_GROUP_SIZE> = ArrayVec::new();
                    for _ in 0..size {
                        let i = rng.random_range(0..free.len());
                        members.push(free.swap_remove(i));
                    }
                    members.sort_unstable();
                    out.groups.push(Clique { members });
                    commits += 1;
                }
            }
        }
        debug_assert!(commits <= active_count);
        Ok(())
    }

    pub fn allocate<R: Rng + ?Sized>(&mut self, active: Option<&[bool]>, rng: &mut R) -> Result<Partition> {
        let mut out = Partition::default();
        self.allocate_into(active, rng, &mut out)?;
        Ok(out)
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

// Size of the next group among `free` mutually adjacent nodes: k is chosen
// with probability C(free, k) / sum_j C(free, j), j = 1..=max_size.
fn draw_group_size<R: Rng + ?Sized>(free: usize, max_size: usize, rng: &mut R) -> usize {
    let top = max_size.min(free);
    let weights: ArrayVec<u128, MAX_GROUP_SIZE> =
        (1..=top).map(|k| binomial(free as u128, k as u128)).collect();
    let total: u128 = weights.iter().sum();
    let mut x = rng.random_range(0..total);
    for (k, w) in weights.iter().enumerate() {
        if x < *w {
            return k + 1;
        }
        x -= w;
    }
    unreachable!("draw below total weight")
}

/// One round's group allocation over the `active` nodes.
pub fn random_partition<R: Rng + ?Sized>(
    g: &Graph,
    active: Option<&[bool]>,
    r: usize,
    rng: &mut R,
) -> Result<Partition> {
    GroupAllocator::new(g, r)?.allocate(active, rng)
}
