use std::io;

use thiserror::Error;

use crate::group::ElementId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A group axiom violated by a candidate Cayley table, with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("entry ({row}, {column}) = {value} is outside 1..={n}")]
    OutOfRange { row: u32, column: u32, value: u32, n: u32 },
    #[error("row {row} repeats value {value} (columns {first} and {second})")]
    RowRepeats { row: u32, value: u32, first: u32, second: u32 },
    #[error("column {column} repeats value {value} (rows {first} and {second})")]
    ColumnRepeats { column: u32, value: u32, first: u32, second: u32 },
    #[error("associativity fails: ({x}*{y})*{z} != {x}*({y}*{z})")]
    NonAssociative { x: ElementId, y: ElementId, z: ElementId },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(ElementId),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid group table: {0}")]
    Validation(#[from] Violation),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// A structural precondition of an operation does not hold; the message
    /// carries the group-theoretic reason.
    #[error("{0}")]
    Precondition(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("requires {required} bytes, limit is {limit}")]
    CapacityExceeded { required: u128, limit: u128 },
    #[error("malformed artifact: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }
}
