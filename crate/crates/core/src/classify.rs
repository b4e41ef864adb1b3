//! Combinatorial flags of prime forms and the labeled catalog.
//!
//! * `S`: the row is its own normalized retrograde.
//! * `P`: the second hexachord's steps invert those of the first.
//! * `L`: some six consecutive pitches are a transposition of the all-trichord
//!   hexachord `{0,1,2,4,7,8}`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::row::{CyclicIntervalVector, Row, TET};
use crate::symmetry::retrograde_unchecked;

const FULL_MASK: u16 = (1 << TET) - 1;

/// Label prefix shared by every catalog entry.
pub const LABEL_PREFIX: &str = "12-";

/// A nonempty set of pitch classes, stored as a 12-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PcSet(u16);

impl PcSet {
    pub fn new(members: impl IntoIterator<Item = u8>) -> Result<Self> {
        let mut mask = 0u16;
        for p in members {
            if p >= TET {
                return Err(Error::InvalidPitchClass(p as i64));
            }
            if mask & (1 << p) != 0 {
                return Err(Error::DuplicatePitch(p));
            }
            mask |= 1 << p;
        }
        if mask == 0 {
            return Err(Error::parse("{}", "pitch-class set must be nonempty"));
        }
        Ok(PcSet(mask))
    }

    pub(crate) fn from_mask(mask: u16) -> Self {
        debug_assert!(mask != 0 && mask & !FULL_MASK == 0);
        PcSet(mask)
    }

    /// The all-trichord hexachord, 6-Z17.
    pub fn all_trichord_hexachord() -> Self {
        PcSet::from_mask(0b0001_1001_0111)
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, pc: u8) -> bool {
        pc < TET && self.0 & (1 << pc) != 0
    }

    pub fn members(self) -> Vec<u8> {
        (0..TET).filter(|&p| self.contains(p)).collect()
    }

    pub fn transpose(self, t: i64) -> Self {
        let t = t.rem_euclid(TET as i64) as u32;
        let wide = (self.0 as u32) << t;
        PcSet(((wide | (wide >> TET)) as u16) & FULL_MASK)
    }

    pub fn invert(self) -> Self {
        PcSet::from_mask(
            (0..TET)
                .filter(|&p| self.contains(p))
                .fold(0, |m, p| m | (1 << ((TET - p) % TET))),
        )
    }

    /// True iff `other` is `self` transposed by some amount.
    pub fn is_transposition_of(self, other: PcSet) -> bool {
        (0..TET as i64).any(|t| self.transpose(t) == other)
    }

    /// Rotation of the members that is most packed to the left: smallest span,
    /// then smallest distance from the first member to the second, third, ...;
    /// remaining ties go to the lowest starting pitch class.
    pub fn normal_order(self) -> Vec<u8> {
        let sorted = self.members();
        let n = sorted.len();
        (0..n)
            .map(|r| {
                let seq: Vec<u8> = (0..n).map(|j| sorted[(r + j) % n]).collect();
                (packing_key(&seq), seq)
            })
            .min()
            .map(|(_, seq)| seq)
            .expect("pitch-class sets are nonempty")
    }

    /// Set-class representative under transposition and inversion: the more
    /// left-packed of the normal orders of the set and of its inversion,
    /// transposed to start on 0.
    pub fn prime_form(self) -> PcSet {
        let zeroed = |seq: Vec<u8>| -> Vec<u8> {
            let base = seq[0];
            seq.iter().map(|&p| (p + TET - base) % TET).collect()
        };
        let a = zeroed(self.normal_order());
        let b = zeroed(self.invert().normal_order());
        let best = if packing_key(&b) < packing_key(&a) {
            b
        } else {
            a
        };
        PcSet::new(best).expect("transposed set is valid")
    }
}

/// (span, d1, d2, ..., d_{n-2}) measured from the first element.
fn packing_key(seq: &[u8]) -> Vec<u8> {
    let n = seq.len();
    let dist = |j: usize| (seq[j] + TET - seq[0]) % TET;
    std::iter::once(dist(n - 1))
        .chain((1..n.saturating_sub(1)).map(dist))
        .collect()
}

impl fmt::Display for PcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::row::write_bracketed(f, &self.members())
    }
}

impl fmt::Debug for PcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PcSet{self}")
    }
}

/// Transposition/inversion set class of `s`.
pub fn setclass_prime_form(s: PcSet) -> PcSet {
    s.prime_form()
}

/// Non-retrogradable: the row equals its normalized retrograde.
pub fn is_symmetric_inverted(row: &Row) -> Result<bool> {
    let row = row.require_normal_form()?;
    Ok(retrograde_unchecked(&row) == row)
}

/// Interval form of [`is_symmetric_inverted`]: `i_k + i_{12-k} = 12` for
/// k = 1..5 and `i_6 = 6` (1-based linear intervals).
pub fn is_symmetric_inverted_by_intervals(row: &Row) -> Result<bool> {
    let steps = row.require_normal_form()?.linear_intervals();
    let i = |k: usize| steps[k - 1];
    Ok(i(6) == 6 && (1..=5).all(|k| i(k) + i(12 - k) == TET))
}

/// Parallel inverted: `i_{k+6} = 12 - i_k` for k = 1..5.
pub fn is_parallel_inverted(row: &Row) -> Result<bool> {
    let steps = row.require_normal_form()?.linear_intervals();
    let i = |k: usize| steps[k - 1];
    Ok((1..=5).all(|k| i(k + 6) == TET - i(k)))
}

/// Hexachord form of [`is_parallel_inverted`]: the second ordered hexachord is a
/// transposed inversion of the first.
pub fn is_parallel_inverted_by_hexachords(row: &Row) -> Result<bool> {
    let p = *row.require_normal_form()?.pitches();
    let t = (p[6] + p[0]) % TET;
    Ok((0..6).all(|j| p[6 + j] == (t + TET - p[j]) % TET))
}

/// Start indices (0..=6) of six-note windows that are transpositions of the
/// all-trichord hexachord.
pub fn link_windows(row: &Row) -> Result<Vec<usize>> {
    let row = row.require_normal_form()?;
    let target = PcSet::all_trichord_hexachord();
    Ok((0..=6)
        .filter(|&start| PcSet::from_mask(row.segment_mask(start, 6)).is_transposition_of(target))
        .collect())
}

pub fn is_link(row: &Row) -> Result<(bool, Vec<usize>)> {
    let windows = link_windows(row)?;
    Ok((!windows.is_empty(), windows))
}

/// One line of the prime-form catalog.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub index: usize,
    pub label: String,
    pub row: Row,
    pub intervals: CyclicIntervalVector,
    pub s: bool,
    pub p: bool,
    pub l: bool,
    pub link_windows: Vec<usize>,
}

impl CatalogEntry {
    pub fn classify(index: usize, row: Row) -> Result<Self> {
        let s = is_symmetric_inverted(&row)?;
        let p = is_parallel_inverted(&row)?;
        let (l, link_windows) = is_link(&row)?;
        if s && p {
            log::warn!("{row} is both symmetrical and parallel inverted");
        }
        let label = format!("{LABEL_PREFIX}{index}{}", suffix(s, p, l));
        Ok(CatalogEntry {
            index,
            label,
            row,
            intervals: row.cyclic_intervals(),
            s,
            p,
            l,
            link_windows,
        })
    }

    pub fn suffix(&self) -> &str {
        self.label
            .trim_start_matches(LABEL_PREFIX)
            .trim_start_matches(|c: char| c.is_ascii_digit())
    }
}

fn suffix(s: bool, p: bool, l: bool) -> String {
    let mut out = String::new();
    if s {
        out.push('S');
    }
    if p {
        out.push('P');
    }
    if l {
        out.push('L');
    }
    out
}

/// The labeled prime forms, in catalog order.
#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    by_row: HashMap<Row, usize>,
}

impl Catalog {
    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&CatalogEntry> {
        self.entries.get(index)
    }

    pub fn rows(&self) -> Vec<Row> {
        self.entries.iter().map(|e| e.row).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.label.clone()).collect()
    }

    pub fn find_row(&self, row: &Row) -> Option<&CatalogEntry> {
        self.by_row.get(row).map(|&i| &self.entries[i])
    }

    /// Resolves `12-657`, `12-114L` or a bare index such as `657`. A suffix,
    /// when given, must match the entry's flags.
    pub fn lookup(&self, label: &str) -> Result<&CatalogEntry> {
        let unknown = || Error::UnknownLabel(label.to_string());
        let body = label.trim();
        let body = body.strip_prefix(LABEL_PREFIX).unwrap_or(body);
        let digits_end = body
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(body.len());
        let index: usize = body[..digits_end].parse().map_err(|_| unknown())?;
        let entry = self.entries.get(index).ok_or_else(unknown)?;
        let given = &body[digits_end..];
        if given.is_empty() || given.eq_ignore_ascii_case(entry.suffix()) {
            Ok(entry)
        } else {
            Err(unknown())
        }
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.lookup(label).map(|e| e.index)
    }

    pub fn flag_counts(&self) -> FlagCounts {
        let mut counts = FlagCounts::default();
        for e in &self.entries {
            counts.s += e.s as usize;
            counts.p += e.p as usize;
            counts.l += e.l as usize;
            counts.link_instances += e.link_windows.len();
        }
        counts
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct FlagCounts {
    pub s: usize,
    pub p: usize,
    pub l: usize,
    /// Total number of matching hexachord windows over all link rows.
    pub link_instances: usize,
}

/// Labels `primes` in order and classifies each one.
pub fn build_catalog(primes: &[Row]) -> Result<Catalog> {
    let entries = primes
        .iter()
        .enumerate()
        .map(|(i, &row)| CatalogEntry::classify(i, row))
        .collect::<Result<Vec<_>>>()?;
    let by_row = entries.iter().map(|e| (e.row, e.index)).collect();
    Ok(Catalog { entries, by_row })
}

/// Distinct set classes of the six-note windows of a row, for inspection.
pub fn window_set_classes(row: &Row) -> BTreeSet<PcSet> {
    (0..=6)
        .map(|start| PcSet::from_mask(row.segment_mask(start, 6)).prime_form())
        .collect()
}
