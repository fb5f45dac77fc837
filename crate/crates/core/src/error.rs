// SPDX-License-Identifier: MIT OR Apache-2.0

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("row {row}: malformed numeric field {field:?}")]
    MalformedNumber { row: usize, field: String },

    #[error("row {row}: non-finite value {field:?}")]
    NonFinite { row: usize, field: String },

    #[error("row {row}: x is not strictly increasing ({prev} then {next})")]
    NonIncreasingX { row: usize, prev: f64, next: f64 },

    #[error("row {row}: expected {expected} column(s), found {found}")]
    ColumnCount {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("xs and ys differ in length ({xs} vs {ys})")]
    LengthMismatch { xs: usize, ys: usize },

    #[error("empty series")]
    EmptySeries,

    /// Fewer than two distinct consecutive values; there is nothing to label.
    #[error("degenerate series: fewer than two distinct consecutive values")]
    DegenerateSeries,

    #[error("a flat direction has no monotone envelopes")]
    FlatEnvelope,

    #[error("index range [{lo}, {hi}] is invalid for length {len}")]
    IndexRange { lo: usize, hi: usize, len: usize },

    #[error("invalid breakpoints: {0}")]
    Breakpoints(String),

    #[error("segment budget must be at least 1, got {0}")]
    InvalidBudget(usize),

    #[error("segment budget {k} is out of range 1..={max}")]
    BudgetOutOfRange { k: usize, max: usize },

    #[error("query descriptor does not belong to this index")]
    DescriptorMismatch,

    #[error("oracle input of length {len} exceeds the limit of {limit}")]
    OracleLimit { len: usize, limit: usize },

    #[error("unknown series kind {0:?}")]
    UnknownKind(String),
}

pub type Result<T> = std::result::Result<T, Error>;
