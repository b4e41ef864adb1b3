//! Threshold graph over the prime-form catalog and its statistics.

mod cliques;
mod components;
mod louvain;
mod powerlaw;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::{DistanceMatrix, SquaredDistance};
use crate::row::Row;

pub use cliques::{maximal_cliques, verify_clique};
pub use components::{connected_components, hermits};
pub use louvain::{louvain_communities, modularity, CommunityAssignment};
pub use powerlaw::{
    degree_points, fit_pure_power_law, fit_truncated_power_law, PowerLawFit, FIT_METHOD,
};

/// Threshold used for the reference network.
pub const DEFAULT_THRESHOLD_SQ: u32 = 20;

/// How an edge weight is derived from its squared distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub enum WeightMode {
    /// `1 / d²`
    #[default]
    #[serde(rename = "inv-d2")]
    InverseD2,
    /// `1 / d`
    #[serde(rename = "inv-d")]
    InverseD,
}

impl WeightMode {
    pub fn weight(self, d: SquaredDistance) -> f64 {
        match self {
            WeightMode::InverseD2 => 1.0 / d.value() as f64,
            WeightMode::InverseD => 1.0 / d.distance(),
        }
    }
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightMode::InverseD2 => "inv-d2",
            WeightMode::InverseD => "inv-d",
        })
    }
}

impl FromStr for WeightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inv-d2" | "inverse_d2" => Ok(WeightMode::InverseD2),
            "inv-d" | "inverse_d" => Ok(WeightMode::InverseD),
            _ => Err(Error::parse(s, "weight mode must be inv-d2 or inv-d")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub d_squared: SquaredDistance,
    pub weight: f64,
}

/// Undirected graph on catalog indices; `a -- b` iff `0 < d²(a, b) <= threshold_sq`.
#[derive(Debug, Clone)]
pub struct AisGraph {
    threshold_sq: u32,
    weight_mode: WeightMode,
    edges: Vec<Edge>,
    // neighbour, edge index; sorted by neighbour
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl AisGraph {
    pub fn from_matrix(
        matrix: &DistanceMatrix,
        threshold_sq: u32,
        weight_mode: WeightMode,
    ) -> Self {
        let n = matrix.len();
        let mut edges = Vec::new();
        let mut adjacency = vec![Vec::new(); n];
        for (a, b, d) in matrix.pairs_within(threshold_sq) {
            let idx = edges.len();
            edges.push(Edge {
                a,
                b,
                d_squared: d,
                weight: weight_mode.weight(d),
            });
            adjacency[a].push((b, idx));
            adjacency[b].push((a, idx));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        AisGraph {
            threshold_sq,
            weight_mode,
            edges,
            adjacency,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn threshold_sq(&self) -> u32 {
        self.threshold_sq
    }

    pub fn weight_mode(&self) -> WeightMode {
        self.weight_mode
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn neighbors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[node].iter().map(|&(n, _)| n)
    }

    /// Neighbours with the connecting edge.
    pub fn incident(&self, node: usize) -> impl Iterator<Item = (usize, &Edge)> + '_ {
        self.adjacency[node]
            .iter()
            .map(move |&(n, e)| (n, &self.edges[e]))
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<&Edge> {
        self.adjacency[a]
            .binary_search_by_key(&b, |&(n, _)| n)
            .ok()
            .map(|pos| &self.edges[self.adjacency[a][pos].1])
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_between(a, b).is_some()
    }

    /// Unordered edge set as sorted `(low, high)` pairs.
    pub fn edge_set(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .map(|e| (e.a.min(e.b), e.a.max(e.b)))
            .collect();
        out.sort_unstable();
        out
    }
}

/// Computes the distance matrix of `rows` and thresholds it.
pub fn build_network(rows: &[Row], threshold_sq: u32, weight_mode: WeightMode) -> AisGraph {
    AisGraph::from_matrix(&DistanceMatrix::compute(rows), threshold_sq, weight_mode)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeStats {
    pub degrees: Vec<usize>,
    pub average: f64,
    pub max: usize,
    /// degree -> number of nodes with that degree
    pub histogram: BTreeMap<usize, usize>,
}

pub fn degree_stats(g: &AisGraph) -> DegreeStats {
    let degrees: Vec<usize> = (0..g.node_count()).map(|i| g.degree(i)).collect();
    let mut histogram = BTreeMap::new();
    for &d in &degrees {
        *histogram.entry(d).or_insert(0) += 1;
    }
    let average = if degrees.is_empty() {
        0.0
    } else {
        degrees.iter().sum::<usize>() as f64 / degrees.len() as f64
    };
    DegreeStats {
        max: degrees.iter().copied().max().unwrap_or(0),
        degrees,
        average,
        histogram,
    }
}
