//! Position-wise voice-leading distance between rows.
//!
//! Distances are kept as exact squared integers; `d` itself only appears when
//! a caller asks for it.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::Catalog;
use crate::row::{Row, TET};

/// Sum over positions of the squared circular pitch-class difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SquaredDistance(pub u32);

impl SquaredDistance {
    pub fn value(self) -> u32 {
        self.0
    }

    pub fn distance(self) -> f64 {
        (self.0 as f64).sqrt()
    }
}

impl fmt::Display for SquaredDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[inline]
fn circular_step(a: u8, b: u8) -> u32 {
    let diff = a.abs_diff(b);
    diff.min(TET - diff) as u32
}

pub fn vl_distance_sq(a: &Row, b: &Row) -> SquaredDistance {
    SquaredDistance(
        a.pitches()
            .iter()
            .zip(b.pitches())
            .map(|(&x, &y)| {
                let s = circular_step(x, y);
                s * s
            })
            .sum(),
    )
}

/// How one row turns into another by exchanging pitch classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwapProfile {
    pub differing_positions: Vec<usize>,
    /// Unordered pitch-class pairs `(low, high)` that trade places.
    pub exchanged_pairs: BTreeSet<(u8, u8)>,
    /// Exactly two positions differ and they exchange their pitch classes.
    pub is_pure_swap: bool,
}

pub fn swap_profile(a: &Row, b: &Row) -> SwapProfile {
    let (pa, pb) = (a.pitches(), b.pitches());
    let differing_positions: Vec<usize> = (0..12).filter(|&i| pa[i] != pb[i]).collect();
    // both rows are permutations, so a_i -> b_i is a permutation of pitch classes
    let mut maps_to = [u8::MAX; 12];
    for &i in &differing_positions {
        maps_to[pa[i] as usize] = pb[i];
    }
    let exchanged_pairs: BTreeSet<(u8, u8)> = differing_positions
        .iter()
        .map(|&i| (pa[i], pb[i]))
        .filter(|&(x, y)| maps_to[y as usize] == x)
        .map(|(x, y)| (x.min(y), x.max(y)))
        .collect();
    let is_pure_swap = differing_positions.len() == 2 && exchanged_pairs.len() == 1;
    SwapProfile {
        differing_positions,
        exchanged_pairs,
        is_pure_swap,
    }
}

/// Dense symmetric matrix of squared distances between catalog rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u16>,
}

impl DistanceMatrix {
    /// Rows are filled in parallel; the result does not depend on scheduling.
    pub fn compute(rows: &[Row]) -> Self {
        let n = rows.len();
        let mut data = vec![0u16; n * n];
        data.par_chunks_mut(n.max(1))
            .enumerate()
            .for_each(|(i, out)| {
                for (j, slot) in out.iter_mut().enumerate() {
                    *slot = vl_distance_sq(&rows[i], &rows[j]).0 as u16;
                }
            });
        DistanceMatrix { n, data }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> SquaredDistance {
        SquaredDistance(self.data[i * self.n + j] as u32)
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = SquaredDistance> + '_ {
        self.data[i * self.n..(i + 1) * self.n]
            .iter()
            .map(|&d| SquaredDistance(d as u32))
    }

    pub fn max(&self) -> SquaredDistance {
        SquaredDistance(self.data.iter().copied().max().unwrap_or(0) as u32)
    }

    /// Unordered pairs `i < j` with `0 < d² <= cap`, in row-major order.
    pub fn pairs_within(&self, cap: u32) -> Vec<(usize, usize, SquaredDistance)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let d = self.get(i, j);
                if d.0 > 0 && d.0 <= cap {
                    out.push((i, j, d));
                }
            }
        }
        out
    }
}

/// Catalog index pairs `i < j` related by a single semitone swap (d² = 2).
pub fn close_coupled_pairs(matrix: &DistanceMatrix) -> Vec<(usize, usize)> {
    matrix
        .pairs_within(2)
        .into_iter()
        .filter(|&(_, _, d)| d.0 == 2)
        .map(|(i, j, _)| (i, j))
        .collect()
}

/// [`close_coupled_pairs`] rendered as catalog labels.
pub fn close_coupled_labels(catalog: &Catalog, matrix: &DistanceMatrix) -> Vec<(String, String)> {
    close_coupled_pairs(matrix)
        .into_iter()
        .map(|(i, j)| {
            (
                catalog.entries()[i].label.clone(),
                catalog.entries()[j].label.clone(),
            )
        })
        .collect()
}
