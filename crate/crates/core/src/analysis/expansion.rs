//! Exact vertex and edge expansion by scanning every subset `S` with
//! `0 < |S| < n/2`.

use rayon::prelude::*;

use crate::error::{GgmError, Result};
use crate::graph::Graph;

/// Largest graph accepted by the exact subset scan.
pub const EXACT_EXPANSION_MAX_N: usize = 24;

/// A boundary-to-size ratio kept as an exact fraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub boundary: u32,
    pub size: u32,
}

impl Ratio {
    pub fn value(self) -> f64 {
        self.boundary as f64 / self.size as f64
    }

    fn less_than(self, other: Ratio) -> bool {
        (self.boundary as u64) * (other.size as u64) < (other.boundary as u64) * (self.size as u64)
    }
}

/// Exact minima of both expansion ratios.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactExpansion {
    /// min |outer boundary| / |S|
    pub vertex: Ratio,
    /// min |edge boundary| / |S|
    pub edge: Ratio,
}

fn check_size(g: &Graph) -> Result<usize> {
    let n = g.node_count();
    if n > EXACT_EXPANSION_MAX_N {
        return Err(GgmError::TooLarge {
            n,
            max: EXACT_EXPANSION_MAX_N,
        });
    }
    if n <= 2 {
        return Err(GgmError::UndefinedRange(n));
    }
    Ok(n)
}

const WORST: Ratio = Ratio {
    boundary: u32::MAX,
    size: 1,
};

fn better(a: Ratio, b: Ratio) -> Ratio {
    if b.less_than(a) {
        b
    } else {
        a
    }
}

/// Both expansion minima in one pass over the subsets.
pub fn exact_expansion(g: &Graph) -> Result<ExactExpansion> {
    let n = check_size(g)?;
    let masks: Vec<u32> = g
        .nodes()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let total: u64 = 1 << n;
    // chunk on the high bits; every chunk scans a contiguous mask range
    let chunk = 1u64 << n.saturating_sub(8).min(16);
    let (vertex, edge) = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut best = (WORST, WORST);
            let lo = (c * chunk).max(1);
            let hi = ((c + 1) * chunk).min(total);
            for s in lo..hi {
                let s = s as u32;
                let size = s.count_ones();
                if 2 * size >= n as u32 {
                    continue;
                }
                let mut outer = 0u32;
                let mut cut = 0u32;
                let mut rest = s;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    outer |= masks[v];
                    cut += (masks[v] & !s).count_ones();
                }
                let outer = (outer & !s).count_ones();
                best.0 = better(best.0, Ratio { boundary: outer, size });
                best.1 = better(best.1, Ratio { boundary: cut, size });
            }
            best
        })
        .reduce(|| (WORST, WORST), |a, b| (better(a.0, b.0), better(a.1, b.1)));
    Ok(ExactExpansion { vertex, edge })
}

/// Vertex expansion h_out(G).
pub fn vertex_expansion(g: &Graph) -> Result<f64> {
    Ok(exact_expansion(g)?.vertex.value())
}

/// Edge expansion h(G).
pub fn edge_expansion(g: &Graph) -> Result<f64> {
    Ok(exact_expansion(g)?.edge.value())
}
