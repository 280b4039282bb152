use std::fmt;

use thiserror::Error;

use crate::table::Kind;

/// The first reason a table fails the claimed [`Kind`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateInColumn {
        column: usize,
        symbol: usize,
        rows: (usize, usize),
    },
    DuplicateInRow {
        row: usize,
        symbol: usize,
        columns: (usize, usize),
    },
    /// Element 0 does not act as a two-sided identity: `0·x` or `x·0` at
    /// `position` produced `found`.
    NotNeutral {
        position: usize,
        found: usize,
        side: Side,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::DuplicateInColumn {
                column,
                symbol,
                rows,
            } => write!(
                f,
                "column {column} repeats symbol {symbol} (rows {} and {})",
                rows.0, rows.1
            ),
            Violation::DuplicateInRow {
                row,
                symbol,
                columns,
            } => write!(
                f,
                "row {row} repeats symbol {symbol} (columns {} and {})",
                columns.0, columns.1
            ),
            Violation::NotNeutral {
                position,
                found,
                side,
            } => match side {
                Side::Left => write!(f, "0·{position} = {found}, element 0 is not neutral"),
                Side::Right => write!(f, "{position}·0 = {found}, element 0 is not neutral"),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order must be in 1..={max}, got {order}")]
    OrderOutOfRange { order: usize, max: usize },

    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },

    #[error("row {row} has {found} entries, expected {expected}")]
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("cell ({row}, {column}) = {value} is outside 0..{order}")]
    CellOutOfRange {
        row: usize,
        column: usize,
        value: usize,
        order: usize,
    },

    #[error("table is not a {kind}: {violation}")]
    KindViolation { kind: Kind, violation: Violation },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{property} requires a table with an identity element")]
    NoIdentity { property: &'static str },

    #[error("expected a {expected}, got a table that is not one")]
    WrongKind { expected: Kind },

    #[error(
        "no nonassociative Jordan loop of order {0} exists \
         (such loops exist exactly for orders n >= 6 with n != 9)"
    )]
    NoJordanLoop(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("element {element} is outside 0..{order}")]
    ElementOutOfRange { element: usize, order: usize },

    #[error("power exponent {k} exceeds the configured cap {cap}")]
    PowerCap { k: usize, cap: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
