//! Twelve-tone rows and their interval successions.
//!
//! A [`Row`] is stored as its pitch sequence only. Interval vectors are always
//! derived from it, so the two views can never disagree.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Size of the pitch-class universe.
pub const TET: u8 = 12;

/// The tritone, which closes every normal-form all-interval row.
pub const TRITONE: u8 = 6;

/// Reduces any integer into `0..12` (never negative).
#[inline]
pub fn pc_mod(value: i64) -> u8 {
    value.rem_euclid(TET as i64) as u8
}

/// A pitch class, in semitones above pitch class 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "u8")]
pub struct PitchClass(u8);

impl PitchClass {
    pub fn new(value: i64) -> Result<Self> {
        if (0..TET as i64).contains(&value) {
            Ok(PitchClass(value as u8))
        } else {
            Err(Error::InvalidPitchClass(value))
        }
    }

    /// Wraps an arbitrary integer into a pitch class.
    pub fn wrapping(value: i64) -> Self {
        PitchClass(pc_mod(value))
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl TryFrom<i64> for PitchClass {
    type Error = Error;

    fn try_from(value: i64) -> Result<Self> {
        PitchClass::new(value)
    }
}

impl From<PitchClass> for u8 {
    fn from(pc: PitchClass) -> u8 {
        pc.0
    }
}

impl fmt::Display for PitchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An ordered sequence of the twelve distinct pitch classes.
///
/// Rows are ordered by their [cyclic interval vector](Row::cyclic_intervals)
/// first and their starting pitch class second. For rows that start on 0 this
/// is the order in which the interval permutations are enumerated, and it is
/// the order of the prime-form catalog.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u8>")]
pub struct Row([u8; 12]);

impl Row {
    /// Builds a row from exactly twelve distinct pitch classes.
    pub fn new(pitches: &[i64]) -> Result<Self> {
        if pitches.len() != TET as usize {
            return Err(Error::WrongLength {
                expected: TET as usize,
                actual: pitches.len(),
            });
        }
        let mut out = [0u8; 12];
        for (slot, &p) in out.iter_mut().zip(pitches) {
            *slot = PitchClass::new(p)?.value();
        }
        Row::from_array(out)
    }

    /// Builds a row from a fixed array, checking range and distinctness.
    pub fn from_array(pitches: [u8; 12]) -> Result<Self> {
        let mut seen = 0u16;
        for &p in &pitches {
            if p >= TET {
                return Err(Error::InvalidPitchClass(p as i64));
            }
            if seen & (1 << p) != 0 {
                return Err(Error::DuplicatePitch(p));
            }
            seen |= 1 << p;
        }
        Ok(Row(pitches))
    }

    /// Caller guarantees `pitches` is a permutation of 0..12.
    #[inline]
    pub(crate) fn from_array_unchecked(pitches: [u8; 12]) -> Self {
        debug_assert!(Row::from_array(pitches).is_ok(), "{pitches:?}");
        Row(pitches)
    }

    /// The chromatic scale 0, 1, ..., 11.
    pub fn chromatic() -> Self {
        Row(std::array::from_fn(|i| i as u8))
    }

    /// Rebuilds the row starting on pitch class 0 from its eleven linear
    /// intervals, by cumulative summation mod 12.
    ///
    /// Repeated intervals are accepted as long as no pitch class is revisited;
    /// all-interval-ness is checked separately by [`Row::is_ais_normal_form`].
    pub fn from_linear_intervals(intervals: &[i64]) -> Result<Self> {
        if intervals.len() != TET as usize - 1 {
            return Err(Error::WrongLength {
                expected: TET as usize - 1,
                actual: intervals.len(),
            });
        }
        let mut out = [0u8; 12];
        let mut seen = 1u16;
        let mut current = 0u8;
        for (k, &step) in intervals.iter().enumerate() {
            if !(1..TET as i64).contains(&step) {
                return Err(Error::InvalidInterval(step));
            }
            current = (current + step as u8) % TET;
            if seen & (1 << current) != 0 {
                return Err(Error::DuplicatePitch(current));
            }
            seen |= 1 << current;
            out[k + 1] = current;
        }
        Ok(Row(out))
    }

    pub fn pitches(&self) -> &[u8; 12] {
        &self.0
    }

    pub fn pitch(&self, index: usize) -> PitchClass {
        PitchClass(self.0[index])
    }

    pub fn first(&self) -> u8 {
        self.0[0]
    }

    pub fn last(&self) -> u8 {
        self.0[11]
    }

    /// Successive intervals including the wrap from the last pitch back to the first.
    pub fn cyclic_intervals(&self) -> CyclicIntervalVector {
        let p = &self.0;
        CyclicIntervalVector(std::array::from_fn(|k| {
            (p[(k + 1) % 12] + TET - p[k]) % TET
        }))
    }

    /// The eleven intervals between consecutive pitches (no wrap).
    pub fn linear_intervals(&self) -> [u8; 11] {
        let p = &self.0;
        std::array::from_fn(|k| (p[k + 1] + TET - p[k]) % TET)
    }

    /// True iff the row starts on 0 and its eleven linear intervals are all distinct.
    pub fn is_ais_normal_form(&self) -> bool {
        if self.0[0] != 0 {
            return false;
        }
        let mut seen = 0u16;
        for step in self.linear_intervals() {
            if seen & (1 << step) != 0 {
                return false;
            }
            seen |= 1 << step;
        }
        true
    }

    /// Returns `self` if it is a normal-form all-interval row.
    pub fn require_normal_form(&self) -> Result<Row> {
        if self.is_ais_normal_form() {
            Ok(*self)
        } else {
            Err(Error::NotNormalForm(*self))
        }
    }

    /// Pitch classes as a bitmask (bit `p` set for each member).
    pub(crate) fn segment_mask(&self, start: usize, len: usize) -> u16 {
        self.0[start..start + len]
            .iter()
            .fold(0u16, |m, &p| m | (1 << p))
    }
}

impl Ord for Row {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cyclic_intervals()
            .cmp(&other.cyclic_intervals())
            .then_with(|| self.0[0].cmp(&other.0[0]))
    }
}

impl PartialOrd for Row {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bracketed(f, &self.0)
    }
}

impl fmt::Debug for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Row{self}")
    }
}

/// Accepts `[0 1 3 ...]`, `[0, 1, 3, ...]` or bare `0,1,3,...`.
impl FromStr for Row {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = parse_int_list(s)?;
        Row::new(&values).map_err(|e| Error::parse(s, e.to_string()))
    }
}

impl TryFrom<Vec<i64>> for Row {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        Row::new(&v)
    }
}

impl From<Row> for Vec<u8> {
    fn from(row: Row) -> Vec<u8> {
        row.0.to_vec()
    }
}

/// The twelve intervals of a row read as a cycle; entry 11 is the wrap interval.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CyclicIntervalVector([u8; 12]);

impl CyclicIntervalVector {
    pub fn intervals(&self) -> &[u8; 12] {
        &self.0
    }

    pub fn wrap(&self) -> u8 {
        self.0[11]
    }

    /// Sum of all entries mod 12 (always 0 for a vector derived from a row).
    pub fn sum_mod_12(&self) -> u8 {
        (self.0.iter().map(|&i| i as u32).sum::<u32>() % TET as u32) as u8
    }
}

impl fmt::Display for CyclicIntervalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bracketed(f, &self.0)
    }
}

impl fmt::Debug for CyclicIntervalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Intervals{self}")
    }
}

pub(crate) fn write_bracketed(f: &mut impl fmt::Write, values: &[u8]) -> fmt::Result {
    f.write_char('[')?;
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            f.write_char(' ')?;
        }
        write!(f, "{v}")?;
    }
    f.write_char(']')
}

pub(crate) fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let trimmed = s.trim();
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .unwrap_or(trimmed);
    inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|tok| !tok.is_empty())
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|_| Error::parse(s, format!("{tok:?} is not an integer")))
        })
        .collect()
}
