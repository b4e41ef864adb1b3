//! The closed symmetry operations on normal-form all-interval rows.
//!
//! `I`, `R`, `M` and `Q` map normal forms to normal forms; the retrograde and
//! the rotation are re-transposed to start on 0 as part of the operation.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::row::{pc_mod, Row, TET, TRITONE};

/// Shifts every pitch class by `t` semitones. The result starts on `t`, so it
/// is only a normal form when `t ≡ 0`.
pub fn transpose(row: &Row, t: i64) -> Row {
    let shift = pc_mod(t);
    Row::from_array_unchecked(row.pitches().map(|p| (p + shift) % TET))
}

/// Negates every pitch class about 0.
pub fn invert(row: &Row) -> Result<Row> {
    let row = row.require_normal_form()?;
    Ok(invert_unchecked(&row))
}

/// Reverses the row and transposes it back to start on 0. Normal forms end on
/// the tritone, so the transposition is always +6.
pub fn retrograde_normal(row: &Row) -> Result<Row> {
    let row = row.require_normal_form()?;
    Ok(retrograde_unchecked(&row))
}

/// Multiplies every pitch class by 5 mod 12.
pub fn multiply_m5(row: &Row) -> Result<Row> {
    let row = row.require_normal_form()?;
    Ok(multiply_unchecked(&row))
}

/// Rotates the pitch cycle to begin just past the internal tritone step and
/// transposes to 0. The internal tritone becomes the new wrap interval.
pub fn q_rotate(row: &Row) -> Result<Row> {
    let row = row.require_normal_form()?;
    Ok(rotate_unchecked(&row))
}

pub(crate) fn invert_unchecked(row: &Row) -> Row {
    Row::from_array_unchecked(row.pitches().map(|p| (TET - p) % TET))
}

pub(crate) fn retrograde_unchecked(row: &Row) -> Row {
    let p = row.pitches();
    let shift = TET - p[11];
    Row::from_array_unchecked(std::array::from_fn(|i| (p[11 - i] + shift) % TET))
}

pub(crate) fn multiply_unchecked(row: &Row) -> Row {
    Row::from_array_unchecked(row.pitches().map(|p| (p * 5) % TET))
}

pub(crate) fn rotate_unchecked(row: &Row) -> Row {
    let steps = row.linear_intervals();
    let k = steps
        .iter()
        .position(|&s| s == TRITONE)
        .expect("normal form has an internal tritone");
    let p = row.pitches();
    let start = k + 1;
    let shift = TET - p[start];
    Row::from_array_unchecked(std::array::from_fn(|i| (p[(start + i) % 12] + shift) % TET))
}

/// The four involutions that generate the symmetry group of normal forms.
pub(crate) const GENERATORS: [fn(&Row) -> Row; 4] = [
    invert_unchecked,
    retrograde_unchecked,
    multiply_unchecked,
    rotate_unchecked,
];

/// A single row operation as named on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryOp {
    T(u8),
    I,
    R,
    M,
    Q,
}

impl SymmetryOp {
    pub fn apply(self, row: &Row) -> Result<Row> {
        match self {
            SymmetryOp::T(t) => Ok(transpose(row, t as i64)),
            SymmetryOp::I => invert(row),
            SymmetryOp::R => retrograde_normal(row),
            SymmetryOp::M => multiply_m5(row),
            SymmetryOp::Q => q_rotate(row),
        }
    }
}

impl fmt::Display for SymmetryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymmetryOp::T(t) => write!(f, "T:{t}"),
            SymmetryOp::I => f.write_str("I"),
            SymmetryOp::R => f.write_str("R"),
            SymmetryOp::M => f.write_str("M"),
            SymmetryOp::Q => f.write_str("Q"),
        }
    }
}

/// Parses `I`, `R`, `M`, `Q`, `T:n` or `Tn` (case-insensitive); `n` is taken mod 12.
impl FromStr for SymmetryOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        match upper.as_str() {
            "I" => Ok(SymmetryOp::I),
            "R" => Ok(SymmetryOp::R),
            "M" => Ok(SymmetryOp::M),
            "Q" => Ok(SymmetryOp::Q),
            _ => {
                let amount = upper
                    .strip_prefix('T')
                    .map(|rest| rest.strip_prefix(':').unwrap_or(rest))
                    .ok_or_else(|| Error::parse(s, "expected one of T:n, I, R, M, Q"))?;
                let t: i64 = amount
                    .parse()
                    .map_err(|_| Error::parse(s, "transposition amount must be an integer"))?;
                Ok(SymmetryOp::T(pc_mod(t)))
            }
        }
    }
}

/// The row and its four single-operation images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Star {
    pub p: Row,
    pub i: Row,
    pub r: Row,
    pub q: Row,
    pub m: Row,
}

impl Star {
    /// Labeled cells in display order P, I, R, Q, M.
    pub fn cells(&self) -> [(&'static str, Row); 5] {
        [
            ("P", self.p),
            ("I", self.i),
            ("R", self.r),
            ("Q", self.q),
            ("M", self.m),
        ]
    }
}

pub fn star(row: &Row) -> Result<Star> {
    let p = row.require_normal_form()?;
    Ok(Star {
        p,
        i: invert_unchecked(&p),
        r: retrograde_unchecked(&p),
        q: rotate_unchecked(&p),
        m: multiply_unchecked(&p),
    })
}

/// Row operations of the constellation table, applied after the column operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowOp {
    P,
    R,
    QR,
    Q,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColumnOp {
    P,
    I,
    IM,
    M,
}

impl RowOp {
    pub const ALL: [RowOp; 4] = [RowOp::P, RowOp::R, RowOp::QR, RowOp::Q];

    fn apply(self, row: &Row) -> Row {
        match self {
            RowOp::P => *row,
            RowOp::R => retrograde_unchecked(row),
            RowOp::QR => rotate_unchecked(&retrograde_unchecked(row)),
            RowOp::Q => rotate_unchecked(row),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RowOp::P => "P",
            RowOp::R => "R",
            RowOp::QR => "QR",
            RowOp::Q => "Q",
        }
    }
}

impl ColumnOp {
    pub const ALL: [ColumnOp; 4] = [ColumnOp::P, ColumnOp::I, ColumnOp::IM, ColumnOp::M];

    fn apply(self, row: &Row) -> Row {
        match self {
            ColumnOp::P => *row,
            ColumnOp::I => invert_unchecked(row),
            ColumnOp::IM => multiply_unchecked(&invert_unchecked(row)),
            ColumnOp::M => multiply_unchecked(row),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ColumnOp::P => "P",
            ColumnOp::I => "I",
            ColumnOp::IM => "IM",
            ColumnOp::M => "M",
        }
    }
}

/// The 4×4 table of simple and composite operations on a row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constellation {
    table: [[Row; 4]; 4],
}

impl Constellation {
    pub fn cell(&self, row_op: RowOp, column_op: ColumnOp) -> Row {
        let r = RowOp::ALL.iter().position(|&o| o == row_op).unwrap();
        let c = ColumnOp::ALL.iter().position(|&o| o == column_op).unwrap();
        self.table[r][c]
    }

    pub fn table(&self) -> &[[Row; 4]; 4] {
        &self.table
    }

    pub fn distinct(&self) -> BTreeSet<Row> {
        self.table.iter().flatten().copied().collect()
    }
}

pub fn constellation(row: &Row) -> Result<Constellation> {
    let p = row.require_normal_form()?;
    let table = RowOp::ALL.map(|r| ColumnOp::ALL.map(|c| r.apply(&c.apply(&p))));
    Ok(Constellation { table })
}

/// The set of normal forms reachable from a row under `I`, `R`, `M`, `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    members: BTreeSet<Row>,
}

impl Orbit {
    pub fn members(&self) -> &BTreeSet<Row> {
        &self.members
    }

    /// Smallest member in [`Row`] order.
    pub fn representative(&self) -> Row {
        *self.members.first().expect("orbits are nonempty")
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, row: &Row) -> bool {
        self.members.contains(row)
    }
}

/// Breadth-first closure under the four generators, cross-checked against the
/// distinct cells of the row's constellation.
pub fn orbit(row: &Row) -> Result<Orbit> {
    let seed = row.require_normal_form()?;
    let mut members = BTreeSet::from([seed]);
    let mut queue = VecDeque::from([seed]);
    while let Some(current) = queue.pop_front() {
        for op in GENERATORS {
            let next = op(&current);
            if members.insert(next) {
                queue.push_back(next);
            }
        }
    }
    let cells = constellation(&seed)?.distinct();
    if cells != members {
        return Err(Error::OrbitMismatch {
            row: seed,
            closure: members.len(),
            constellation: cells.len(),
        });
    }
    Ok(Orbit { members })
}
