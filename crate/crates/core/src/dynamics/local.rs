//! Trait-free rounds on sparse graphs, evaluated only where colors can change.
//!
//! Picking cliques one at a time uniformly from the remaining list gives the
//! same partition distribution as scanning every clique in a uniformly
//! random order and keeping each one that overlaps no clique kept before
//! it. A clique is therefore kept iff no overlapping clique earlier in the
//! order is kept, which only looks at its neighbourhood. Order keys and tie
//! coins come from a counter-based hash of (run key, round, clique), so the
//! fate of any clique can be queried without building the whole partition.
//!
//! A group can only change colors if it holds both colors, and then it
//! contains a bichromatic edge. Each round therefore only visits the cliques
//! around nodes with a differently colored neighbour. When that boundary
//! covers a large share of the graph the round is instead drawn in full by
//! the sequential allocator, fed from a generator seeded by the round key;
//! rounds are independent given the coloring, so mixing the two keeps the
//! distribution.

use arrayvec::ArrayVec;

use super::{Color, Coloring, TieRule};
use rand::Rng;

use crate::clique::{Clique, GroupAllocator, Partition, MAX_GROUP_SIZE};
use crate::error::Result;
use crate::graph::{Graph, NodeId};
use crate::rng::{child_seed, rng_from_seed, splitmix64, GOLDEN};

/// Above this many cliques through a single node the neighbourhood queries
/// get more expensive than a full sequential round.
pub(crate) const MAX_CLIQUES_PER_NODE: usize = 48;

// Boundary share of the nodes above which a full sequential round is cheaper.
const DENSE_BOUNDARY_DIVISOR: usize = 4;

const ABSENT: u32 = u32::MAX;

pub(crate) struct LocalRounds<'g> {
    graph: &'g Graph,
    cliques: Vec<Clique>,
    allocator: GroupAllocator<'g>,
    partition: Partition,
    node_offsets: Vec<u32>,
    node_cliques: Vec<u32>,
    tie: TieRule,
    // nodes with at least one differently colored neighbour
    boundary: Vec<NodeId>,
    boundary_pos: Vec<u32>,
    memo_stamp: Vec<u64>,
    memo_kept: Vec<bool>,
    seen_stamp: Vec<u64>,
    stamp: u64,
    order_seed: u64,
    coin_seed: u64,
    candidates: Vec<u32>,
    flipped: Vec<NodeId>,
}

impl<'g> LocalRounds<'g> {
    pub(crate) fn new(graph: &'g Graph, max_size: usize, cliques: Vec<Clique>, tie: TieRule) -> Result<Self> {
        let n = graph.node_count();
        let mut counts = vec![0u32; n + 1];
        for c in &cliques {
            for &v in c.members() {
                counts[v as usize + 1] += 1;
            }
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let node_offsets = counts;
        let mut fill = node_offsets.clone();
        let mut node_cliques = vec![0u32; node_offsets[n] as usize];
        for (id, c) in cliques.iter().enumerate() {
            for &v in c.members() {
                node_cliques[fill[v as usize] as usize] = id as u32;
                fill[v as usize] += 1;
            }
        }
        let len = cliques.len();
        Ok(LocalRounds {
            graph,
            allocator: GroupAllocator::from_cliques(graph, max_size, cliques.clone())?,
            partition: Partition::default(),
            cliques,
            node_offsets,
            node_cliques,
            tie,
            boundary: Vec::new(),
            boundary_pos: vec![ABSENT; n],
            memo_stamp: vec![0; len],
            memo_kept: vec![false; len],
            seen_stamp: vec![0; len],
            stamp: 0,
            order_seed: 0,
            coin_seed: 0,
            candidates: Vec::new(),
            flipped: Vec::new(),
        })
    }

    pub(crate) fn max_cliques_per_node(&self) -> usize {
        self.node_offsets
            .windows(2)
            .map(|w| (w[1] - w[0]) as usize)
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn into_allocator(self) -> GroupAllocator<'g> {
        self.allocator
    }

    fn cliques_of(&self, v: NodeId) -> std::ops::Range<usize> {
        self.node_offsets[v as usize] as usize..self.node_offsets[v as usize + 1] as usize
    }

    fn begin_round(&mut self, key: u64, round: u64) {
        self.stamp += 1;
        self.order_seed = child_seed(key, round.wrapping_mul(2));
        self.coin_seed = child_seed(key, round.wrapping_mul(2) | 1);
    }

    fn order_key(&self, c: u32) -> (u64, u32) {
        (splitmix64(self.order_seed.wrapping_add(u64::from(c).wrapping_mul(GOLDEN))), c)
    }

    fn coin(&self, c: u32, slot: u64) -> Color {
        let h = splitmix64(self.coin_seed.wrapping_add((u64::from(c) * 5 + slot).wrapping_mul(GOLDEN)));
        if h >> 63 == 1 {
            Color::Blue
        } else {
            Color::White
        }
    }

    fn kept(&mut self, c: u32) -> bool {
        let ci = c as usize;
        if self.memo_stamp[ci] == self.stamp {
            return self.memo_kept[ci];
        }
        let key = self.order_key(c);
        let members: ArrayVec<NodeId, MAX_GROUP_SIZE> = self.cliques[ci].members().iter().copied().collect();
        let mut keep = true;
        'scan: for v in members {
            for i in self.cliques_of(v) {
                let d = self.node_cliques[i];
                if d != c && self.order_key(d) < key && self.kept(d) {
                    keep = false;
                    break 'scan;
                }
            }
        }
        self.memo_stamp[ci] = self.stamp;
        self.memo_kept[ci] = keep;
        keep
    }

    /// The full partition of round `round` under run key `key`, groups in
    /// clique-table order.
    pub(crate) fn partition(&mut self, key: u64, round: u64) -> Partition {
        self.begin_round(key, round);
        let mut groups = Vec::new();
        for c in 0..self.cliques.len() as u32 {
            if self.kept(c) {
                groups.push(self.cliques[c as usize].clone());
            }
        }
        Partition { groups }
    }

    fn touches_other_color(&self, colors: &Coloring, v: NodeId) -> bool {
        let own = colors.get(v);
        self.graph.neighbors(v).iter().any(|&u| colors.get(u) != own)
    }

    fn refresh(&mut self, colors: &Coloring, v: NodeId) {
        let on = self.touches_other_color(colors, v);
        let pos = self.boundary_pos[v as usize];
        if on && pos == ABSENT {
            self.boundary_pos[v as usize] = self.boundary.len() as u32;
            self.boundary.push(v);
        } else if !on && pos != ABSENT {
            let last = *self.boundary.last().expect("boundary is non-empty");
            self.boundary.swap_remove(pos as usize);
            if last != v {
                self.boundary_pos[last as usize] = pos;
            }
            self.boundary_pos[v as usize] = ABSENT;
        }
    }

    /// Rebuild the boundary for a new starting coloring.
    pub(crate) fn reset(&mut self, colors: &Coloring) {
        for &v in &self.boundary {
            self.boundary_pos[v as usize] = ABSENT;
        }
        self.boundary.clear();
        for v in self.graph.nodes() {
            self.refresh(colors, v);
        }
    }

    /// One round, in place. Kept groups are disjoint and candidates are
    /// collected before any update, so every group sees pre-round colors.
    /// The boundary must describe `colors` on entry and does so afterwards.
    pub(crate) fn round(&mut self, colors: &mut Coloring, key: u64, round: u64) {
        self.begin_round(key, round);
        self.flipped.clear();
        if self.boundary.len() * DENSE_BOUNDARY_DIVISOR > self.graph.node_count() {
            self.full_round(colors);
        } else {
            self.boundary_round(colors);
        }
        let flipped = std::mem::take(&mut self.flipped);
        for &v in &flipped {
            self.refresh(colors, v);
            for &u in self.graph.neighbors(v) {
                self.refresh(colors, u);
            }
        }
        self.flipped = flipped;
    }

    fn full_round(&mut self, colors: &mut Coloring) {
        let mut rng = rng_from_seed(self.order_seed);
        self.allocator
            .allocate_into(None, &mut rng, &mut self.partition)
            .expect("no activity mask");
        for group in &self.partition.groups {
            let members = group.members();
            let blue = members.iter().filter(|&&v| colors.get(v) == Color::Blue).count();
            if blue == 0 || blue == members.len() {
                continue;
            }
            let white = members.len() - blue;
            let shared = match self.tie {
                TieRule::RandomGroup => Some(coin(&mut rng)),
                _ => None,
            };
            for &v in members {
                let color = if blue > white {
                    Color::Blue
                } else if white > blue {
                    Color::White
                } else {
                    match self.tie {
                        TieRule::RandomGroup => shared.expect("drawn above"),
                        TieRule::RandomNode => coin(&mut rng),
                        TieRule::BiasedWhite => Color::White,
                    }
                };
                if color != colors.get(v) {
                    colors.set(v, color);
                    self.flipped.push(v);
                }
            }
        }
    }

    fn boundary_round(&mut self, colors: &mut Coloring) {
        let mut candidates = std::mem::take(&mut self.candidates);
        candidates.clear();
        for &v in &self.boundary {
            for i in self.cliques_of(v) {
                let c = self.node_cliques[i];
                let ci = c as usize;
                if self.seen_stamp[ci] == self.stamp {
                    continue;
                }
                self.seen_stamp[ci] = self.stamp;
                let members = self.cliques[ci].members();
                let first = colors.get(members[0]);
                if members[1..].iter().any(|&u| colors.get(u) != first) {
                    candidates.push(c);
                }
            }
        }

        for &c in &candidates {
            if !self.kept(c) {
                continue;
            }
            let members = self.cliques[c as usize].members();
            let blue = members.iter().filter(|&&v| colors.get(v) == Color::Blue).count();
            let white = members.len() - blue;
            for (slot, &v) in members.iter().enumerate() {
                let color = if blue > white {
                    Color::Blue
                } else if white > blue {
                    Color::White
                } else {
                    match self.tie {
                        TieRule::RandomGroup => self.coin(c, 4),
                        TieRule::RandomNode => self.coin(c, slot as u64),
                        TieRule::BiasedWhite => Color::White,
                    }
                };
                if color != colors.get(v) {
                    colors.set(v, color);
                    self.flipped.push(v);
                }
            }
        }
        self.candidates = candidates;
    }
}

fn coin<R: Rng>(rng: &mut R) -> Color {
    if rng.random::<bool>() {
        Color::Blue
    } else {
        Color::White
    }
}
