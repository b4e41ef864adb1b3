//! Generation of the normal-form corpus and its reductions.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::row::{Row, TET};
use crate::symmetry::{invert_unchecked, orbit, Orbit, GENERATORS};

/// Every all-interval row that starts on 0, sorted.
///
/// Depth-first search over interval prefixes, pruning as soon as a pitch class
/// repeats. The eleven branches for the first interval run in parallel.
pub fn generate_normal_forms() -> Vec<Row> {
    let mut rows: Vec<Row> = (1..TET)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            let mut pitches = [0u8; 12];
            pitches[1] = first;
            extend(&mut pitches, 1, 1 << first, 1 | (1 << first), &mut out);
            out
        })
        .collect();
    rows.sort_unstable();
    rows
}

fn extend(
    pitches: &mut [u8; 12],
    depth: usize,
    used_steps: u16,
    used_pcs: u16,
    out: &mut Vec<Row>,
) {
    if depth == 11 {
        out.push(Row::from_array_unchecked(*pitches));
        return;
    }
    let current = pitches[depth];
    for step in 1..TET {
        if used_steps & (1 << step) != 0 {
            continue;
        }
        let next = (current + step) % TET;
        if used_pcs & (1 << next) != 0 {
            continue;
        }
        pitches[depth + 1] = next;
        extend(
            pitches,
            depth + 1,
            used_steps | (1 << step),
            used_pcs | (1 << next),
            out,
        );
    }
}

/// Keeps the smaller of each inversion pair `{r, I(r)}`.
pub fn reduce_by_inversion(normal_forms: &[Row]) -> Vec<Row> {
    let mut kept: Vec<Row> = normal_forms
        .iter()
        .filter(|r| **r <= invert_unchecked(r))
        .copied()
        .collect();
    kept.sort_unstable();
    kept
}

/// A normal form is a catalog prime form when none of `I`, `R`, `M`, `Q`
/// applied once maps it to a smaller row.
pub fn is_prime_form(row: &Row) -> bool {
    row.is_ais_normal_form() && GENERATORS.iter().all(|op| op(row) >= *row)
}

/// The prime forms among `normal_forms`, sorted. Index `n` carries label `12-n`.
pub fn select_primes(normal_forms: &[Row]) -> Vec<Row> {
    let mut primes: Vec<Row> = normal_forms
        .par_iter()
        .filter(|r| is_prime_form(r))
        .copied()
        .collect();
    primes.sort_unstable();
    primes
}

pub fn generate_primes() -> Vec<Row> {
    select_primes(&generate_normal_forms())
}

/// The orbits of the symmetry group, ordered by representative.
pub fn distinct_orbits(normal_forms: &[Row]) -> Vec<Orbit> {
    let mut seen: HashSet<Row> = HashSet::with_capacity(normal_forms.len());
    let mut orbits = Vec::new();
    for row in normal_forms {
        if seen.contains(row) {
            continue;
        }
        let o = orbit(row).expect("generated rows are normal forms");
        seen.extend(o.members().iter().copied());
        orbits.push(o);
    }
    orbits.sort_by_key(Orbit::representative);
    orbits
}

/// The full corpus with both reductions.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub normal_forms: Vec<Row>,
    pub inversion_reduced: Vec<Row>,
    pub primes: Vec<Row>,
}

impl Corpus {
    pub fn generate() -> Self {
        let normal_forms = generate_normal_forms();
        let inversion_reduced = reduce_by_inversion(&normal_forms);
        let primes = select_primes(&normal_forms);
        Corpus {
            normal_forms,
            inversion_reduced,
            primes,
        }
    }
}
