//! Centrality measures and expansion metrics.

mod centrality;
mod expansion;
mod spectral;

pub use centrality::{
    betweenness_centrality, closeness_centrality, degree_centrality, CentralityVector, Measure,
};
pub use expansion::{
    edge_expansion, exact_expansion, vertex_expansion, ExactExpansion, Ratio, EXACT_EXPANSION_MAX_N,
};
pub use spectral::{
    adjacency_spectrum, spectral_expansion, spectral_expansion_dense, spectral_expansion_lanczos,
    DENSE_MAX_N, SPECTRAL_TOLERANCE,
};

use crate::error::Result;
use crate::graph::Graph;

/// Expansion summary of a graph. The subset-based values are only present
/// when the graph is small enough for the exact scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpansionReport {
    pub h_out: Option<f64>,
    pub h: Option<f64>,
    pub lambda: f64,
}

impl ExpansionReport {
    pub fn exact(&self) -> bool {
        self.h_out.is_some() && self.h.is_some()
    }

    /// The `h_out,h,lambda,exact` line, with empty fields for values that
    /// were not computed.
    pub fn csv_line(&self) -> String {
        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        format!("{},{},{},{}", opt(self.h_out), opt(self.h), self.lambda, self.exact())
    }
}

pub const EXPANSION_CSV_HEADER: &str = "h_out,h,lambda,exact";

pub fn expansion_report(g: &Graph) -> Result<ExpansionReport> {
    let n = g.node_count();
    let exact = if (3..=EXACT_EXPANSION_MAX_N).contains(&n) {
        Some(exact_expansion(g)?)
    } else {
        None
    };
    Ok(ExpansionReport {
        h_out: exact.map(|e| e.vertex.value()),
        h: exact.map(|e| e.edge.value()),
        lambda: spectral_expansion(g)?,
    })
}
