//! Second-largest absolute adjacency eigenvalue.
//!
//! Small graphs go through a dense symmetric eigendecomposition. Larger ones
//! use Lanczos with full reorthogonalization from a seeded random start,
//! checking the Ritz values at growing intervals until they have settled.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;

use crate::error::{GgmError, Result};
use crate::graph::Graph;
use crate::rng::rng_from_seed;

/// Graphs up to this size use the dense solver.
pub const DENSE_MAX_N: usize = 1000;

pub const SPECTRAL_TOLERANCE: f64 = 1e-6;

const LANCZOS_SEED: u64 = 0x5EED_1A7C;
const LANCZOS_MAX_DIM: usize = 2000;

/// lambda(G), picking the solver by size.
pub fn spectral_expansion(g: &Graph) -> Result<f64> {
    if g.node_count() <= DENSE_MAX_N {
        Ok(spectral_expansion_dense(g))
    } else {
        spectral_expansion_lanczos(g)
    }
}

/// Every adjacency eigenvalue, descending.
pub fn adjacency_spectrum(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for (u, v) in g.edges() {
        a[(u as usize, v as usize)] = 1.0;
        a[(v as usize, u as usize)] = 1.0;
    }
    let mut values: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().copied().collect();
    values.sort_by(|x, y| y.total_cmp(x));
    values
}

fn second_largest_abs(values: &[f64]) -> f64 {
    let mut abs: Vec<f64> = values.iter().map(|x| x.abs()).collect();
    abs.sort_by(|x, y| y.total_cmp(x));
    abs.get(1).copied().unwrap_or(0.0)
}

pub fn spectral_expansion_dense(g: &Graph) -> f64 {
    second_largest_abs(&adjacency_spectrum(g))
}

fn multiply(g: &Graph, x: &[f64], y: &mut [f64]) {
    for v in g.nodes() {
        y[v as usize] = g.neighbors(v).iter().map(|&u| x[u as usize]).sum();
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = dot(x, x).sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
    norm
}

/// Lanczos estimate of lambda(G). Connected graphs have a simple top
/// eigenvalue, so the answer is `max(theta_2, |theta_min|)` over the Ritz
/// values once those have converged. Graphs with a tiny spectral gap, such
/// as long cycles, can need a Krylov space close to `n` and may hit the
/// iteration limit.
pub fn spectral_expansion_lanczos(g: &Graph) -> Result<f64> {
    let n = g.node_count();
    if n == 1 {
        return Ok(0.0);
    }
    let mut rng = rng_from_seed(LANCZOS_SEED);
    let mut start: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    normalize(&mut start);
    let max_dim = LANCZOS_MAX_DIM.min(n);
    lanczos_pass(g, start, max_dim).ok_or_else(|| {
        GgmError::Numeric(format!(
            "Lanczos did not converge to {SPECTRAL_TOLERANCE} within {max_dim} iterations"
        ))
    })
}

fn lanczos_pass(g: &Graph, start: Vec<f64>, max_dim: usize) -> Option<f64> {
    let n = g.node_count();
    let mut basis: Vec<Vec<f64>> = vec![start];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut w = vec![0.0; n];
    let mut next_check = 8;
    loop {
        let k = basis.len();
        let q = &basis[k - 1];
        multiply(g, q, &mut w);
        alpha.push(dot(&w, q));
        // full reorthogonalization, twice for stability
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&w, b);
                w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let norm = normalize(&mut w);
        let exhausted = norm < 1e-10;
        if k == max_dim || exhausted || k == next_check {
            if let Some(value) = ritz_estimate(&alpha, &beta, if exhausted { 0.0 } else { norm }) {
                return Some(value);
            }
            if k == max_dim || exhausted {
                return None;
            }
            next_check += (next_check / 4).max(8);
        }
        beta.push(norm);
        basis.push(w.clone());
    }
}

// Eigen-decompose the tridiagonal matrix and accept when the residual bound
// |beta_k * s_{k,i}| is below tolerance for the top two and bottom Ritz values.
fn ritz_estimate(alpha: &[f64], beta: &[f64], residual_beta: f64) -> Option<f64> {
    let k = alpha.len();
    if k < 2 {
        return None;
    }
    let mut t = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alpha[i];
        if i + 1 < k {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let residual = |i: usize| (residual_beta * eig.eigenvectors[(k - 1, i)]).abs();
    let wanted = [order[0], order[1], order[k - 1]];
    if wanted.iter().any(|&i| residual(i) > SPECTRAL_TOLERANCE * 0.1) {
        return None;
    }
    let second = eig.eigenvalues[order[1]];
    let lowest = eig.eigenvalues[order[k - 1]];
    Some(second.abs().max(lowest.abs()))
}
