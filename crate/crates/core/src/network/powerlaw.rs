//! Least-squares fit of `p(k) ∝ k^(-alpha) · exp(-lambda · k)` in log space.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};

pub const FIT_METHOD: &str =
    "unbinned least squares of ln p(k) = c - alpha ln k - lambda k over observed degrees k >= 1, alpha >= 0, lambda >= 0";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub alpha: f64,
    pub lambda: f64,
    /// `c` in `ln p = c - alpha ln k - lambda k`
    pub log_intercept: f64,
    /// Coefficient of determination of the fit to `ln p`.
    pub r_squared: f64,
    pub support: usize,
    /// A nonnegativity bound on alpha or lambda is active at the optimum.
    pub bound_active: bool,
}

impl PowerLawFit {
    /// Unnormalised model value `exp(c) k^-alpha e^-lambda k`.
    pub fn predict(&self, k: f64) -> f64 {
        (self.log_intercept - self.alpha * k.ln() - self.lambda * k).exp()
    }
}

/// `(k, frequency)` for every degree `k >= 1` that occurs; frequencies sum to
/// one over the whole histogram.
pub fn degree_points(histogram: &BTreeMap<usize, usize>) -> Vec<(f64, f64)> {
    let total: usize = histogram.values().sum();
    histogram
        .iter()
        .filter(|&(&k, &count)| k >= 1 && count > 0)
        .map(|(&k, &count)| (k as f64, count as f64 / total as f64))
        .collect()
}

/// Fits both exponents; each is constrained to be nonnegative.
pub fn fit_truncated_power_law(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    fit(points, true)
}

/// Same model with `lambda` pinned to 0.
pub fn fit_pure_power_law(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    fit(points, false)
}

fn fit(points: &[(f64, f64)], with_cutoff: bool) -> Result<PowerLawFit> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(k, p)| k >= 1.0 && p > 0.0 && k.is_finite() && p.is_finite())
        .collect();
    if usable.len() < 3 {
        return Err(Error::InsufficientData(usable.len()));
    }
    let y = DVector::from_iterator(usable.len(), usable.iter().map(|&(_, p)| p.ln()));
    let column = |which: usize| -> DVector<f64> {
        DVector::from_iterator(
            usable.len(),
            usable.iter().map(|&(k, _)| match which {
                0 => 1.0,
                1 => -k.ln(),
                _ => -k,
            }),
        )
    };

    // Box constraints on (alpha, lambda): solve every face and keep the best
    // feasible one. The problem is convex, so that face holds the optimum.
    let free_sets: &[&[usize]] = if with_cutoff {
        &[&[0, 1, 2], &[0, 1], &[0, 2], &[0]]
    } else {
        &[&[0, 1], &[0]]
    };
    let mut best: Option<([f64; 3], f64, bool)> = None;
    for (face, free) in free_sets.iter().enumerate() {
        let design = DMatrix::from_columns(&free.iter().map(|&c| column(c)).collect::<Vec<_>>());
        let Ok(solution) = design.clone().svd(true, true).solve(&y, 1e-12) else {
            continue;
        };
        let mut params = [0.0; 3];
        for (slot, &c) in free.iter().enumerate() {
            params[c] = solution[slot];
        }
        if params[1] < 0.0 || params[2] < 0.0 {
            continue;
        }
        let sse = (&design * &solution - &y).norm_squared();
        if best.is_none_or(|(_, s, _)| sse < s) {
            best = Some((params, sse, face > 0));
        }
    }
    let (params, sse, bound_active) = best.expect("the intercept-only face is always feasible");
    let mean = y.mean();
    let sst: f64 = y.iter().map(|v| (v - mean).powi(2)).sum();
    let r_squared = if sst > 0.0 { 1.0 - sse / sst } else { 1.0 };
    Ok(PowerLawFit {
        alpha: params[1],
        lambda: params[2],
        log_intercept: params[0],
        r_squared,
        support: usable.len(),
        bound_active,
    })
}
