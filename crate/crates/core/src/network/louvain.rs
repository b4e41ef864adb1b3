//! Seeded Louvain modularity optimisation on the weighted threshold graph.
//!
//! Resolution is fixed at 1. The seed only drives the node visiting order, so
//! the same seed always gives the same partition.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::AisGraph;
use crate::error::{Error, Result};

const MIN_GAIN: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommunityAssignment {
    /// Community id per node; ids are numbered by first appearance in node order.
    pub partition: Vec<usize>,
    pub community_count: usize,
    pub modularity: f64,
    pub seed: u64,
}

impl CommunityAssignment {
    pub fn members(&self, community: usize) -> Vec<usize> {
        (0..self.partition.len())
            .filter(|&i| self.partition[i] == community)
            .collect()
    }
}

/// Newman modularity of `partition` on the weighted graph.
pub fn modularity(g: &AisGraph, partition: &[usize]) -> Result<f64> {
    let total: f64 = g.edges().iter().map(|e| e.weight).sum();
    if g.edge_count() == 0 || total <= 0.0 {
        return Err(Error::EmptyGraph);
    }
    let communities = partition.iter().copied().max().map_or(0, |m| m + 1);
    let mut internal = vec![0.0; communities];
    let mut strength = vec![0.0; communities];
    for e in g.edges() {
        if partition[e.a] == partition[e.b] {
            internal[partition[e.a]] += e.weight;
        }
        strength[partition[e.a]] += e.weight;
        strength[partition[e.b]] += e.weight;
    }
    Ok(internal
        .iter()
        .zip(&strength)
        .map(|(&inside, &tot)| inside / total - (tot / (2.0 * total)).powi(2))
        .sum())
}

/// One level of the coarsening hierarchy.
struct Level {
    // neighbour, weight (no self loops)
    adjacency: Vec<Vec<(usize, f64)>>,
    self_loops: Vec<f64>,
}

impl Level {
    fn len(&self) -> usize {
        self.adjacency.len()
    }

    fn strength(&self, node: usize) -> f64 {
        self.adjacency[node].iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * self.self_loops[node]
    }

    /// Local moving phase. Returns a dense community id per node and whether
    /// anything moved.
    fn move_nodes(&self, rng: &mut ChaCha8Rng, two_m: f64) -> (Vec<usize>, bool) {
        let n = self.len();
        let strength: Vec<f64> = (0..n).map(|i| self.strength(i)).collect();
        let mut community: Vec<usize> = (0..n).collect();
        let mut total = strength.clone();
        let mut order: Vec<usize> = (0..n).collect();
        let mut link_weight = vec![0.0; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut any_move = false;

        loop {
            order.shuffle(rng);
            let mut moved = false;
            for &node in &order {
                let own = community[node];
                let k = strength[node];
                for &(nb, w) in &self.adjacency[node] {
                    let c = community[nb];
                    if link_weight[c] == 0.0 {
                        touched.push(c);
                    }
                    link_weight[c] += w;
                }
                total[own] -= k;
                let mut best = own;
                let mut best_gain = link_weight[own] - total[own] * k / two_m;
                for &c in &touched {
                    let gain = link_weight[c] - total[c] * k / two_m;
                    if gain > best_gain + MIN_GAIN {
                        best = c;
                        best_gain = gain;
                    }
                }
                total[best] += k;
                if best != own {
                    community[node] = best;
                    moved = true;
                }
                for &c in &touched {
                    link_weight[c] = 0.0;
                }
                touched.clear();
            }
            if !moved {
                break;
            }
            any_move = true;
        }
        (renumber(&community), any_move)
    }

    fn aggregate(&self, community: &[usize]) -> Level {
        let count = community.iter().copied().max().map_or(0, |m| m + 1);
        let mut self_loops = vec![0.0; count];
        let mut merged: Vec<std::collections::BTreeMap<usize, f64>> =
            vec![Default::default(); count];
        for node in 0..self.len() {
            let c = community[node];
            self_loops[c] += self.self_loops[node];
            for &(nb, w) in &self.adjacency[node] {
                let d = community[nb];
                if c == d {
                    // each internal edge is seen from both ends
                    self_loops[c] += w / 2.0;
                } else {
                    *merged[c].entry(d).or_insert(0.0) += w;
                }
            }
        }
        Level {
            adjacency: merged
                .into_iter()
                .map(|m| m.into_iter().collect())
                .collect(),
            self_loops,
        }
    }
}

fn renumber(labels: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = map.len();
            *map.entry(l).or_insert(next)
        })
        .collect()
}

pub fn louvain_communities(g: &AisGraph, seed: u64) -> Result<CommunityAssignment> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let n = g.node_count();
    let mut level = Level {
        adjacency: (0..n)
            .map(|i| g.incident(i).map(|(nb, e)| (nb, e.weight)).collect())
            .collect(),
        self_loops: vec![0.0; n],
    };
    let two_m: f64 = 2.0 * g.edges().iter().map(|e| e.weight).sum::<f64>();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment: Vec<usize> = (0..n).collect();

    loop {
        let (community, moved) = level.move_nodes(&mut rng, two_m);
        for a in assignment.iter_mut() {
            *a = community[*a];
        }
        let count = community.iter().copied().max().map_or(0, |m| m + 1);
        if !moved || count == level.len() {
            break;
        }
        level = level.aggregate(&community);
    }

    let partition = renumber(&assignment);
    let community_count = partition.iter().copied().max().map_or(0, |m| m + 1);
    let modularity = modularity(g, &partition)?;
    Ok(CommunityAssignment {
        partition,
        community_count,
        modularity,
        seed,
    })
}
