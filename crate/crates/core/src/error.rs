use std::io;

use thiserror::Error;

use crate::row::Row;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("pitch class {0} is outside 0..=11")]
    InvalidPitchClass(i64),

    #[error("interval {0} is outside 1..=11")]
    InvalidInterval(i64),

    #[error("expected {expected} values, got {actual}")]
    WrongLength { expected: usize, actual: usize },

    #[error("pitch class {0} occurs more than once")]
    DuplicatePitch(u8),

    #[error("row {0} is not an all-interval series in normal form")]
    NotNormalForm(Row),

    #[error("could not parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("unknown catalog label {0:?}")]
    UnknownLabel(String),

    #[error("graph has no edges; modularity is undefined")]
    EmptyGraph,

    #[error("power-law fit needs at least 3 support points, got {0}")]
    InsufficientData(usize),

    #[error("orbit closure of {row} ({closure} rows) disagrees with its constellation ({constellation} rows)")]
    OrbitMismatch {
        row: Row,
        closure: usize,
        constellation: usize,
    },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(input: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.into(),
            reason: reason.into(),
        }
    }

    /// Kind of the underlying I/O failure, also when it surfaced through the CSV writer.
    pub fn io_kind(&self) -> Option<io::ErrorKind> {
        match self {
            Error::Io(e) => Some(e.kind()),
            Error::Csv(e) => match e.kind() {
                csv::ErrorKind::Io(e) => Some(e.kind()),
                _ => None,
            },
            _ => None,
        }
    }
}
