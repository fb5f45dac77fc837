// SPDX-License-Identifier: MIT OR Apache-2.0

//! Input sequences: CSV ingestion, removal of repeated consecutive values,
//! and extrema extraction.
//!
//! Everything downstream works on a [`PreprocessedSeries`], where no two
//! consecutive values are equal. Its `origin_index` maps each retained
//! position back to the sample it came from, so results can always be
//! reported against the user's data.

use crate::error::{Error, Result};

/// Ordered samples `(x, y)` with strictly increasing `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl TimeSeries {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::LengthMismatch {
                xs: xs.len(),
                ys: ys.len(),
            });
        }
        for (i, (x, y)) in xs.iter().zip(&ys).enumerate() {
            if let Some(bad) = [x, y].into_iter().find(|v| !v.is_finite()) {
                return Err(Error::NonFinite {
                    row: i + 1,
                    field: bad.to_string(),
                });
            }
        }
        if let Some(i) = xs.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::NonIncreasingX {
                row: i + 2,
                prev: xs[i],
                next: xs[i + 1],
            });
        }
        Ok(Self { xs, ys })
    }

    /// Uses the sample positions `0, 1, 2, …` as abscissae.
    pub fn from_values(ys: Vec<f64>) -> Result<Self> {
        let xs = (0..ys.len()).map(|i| i as f64).collect();
        Self::new(xs, ys)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn len(&self) -> usize {
        self.ys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ys.is_empty()
    }
}

/// Values with runs of equal consecutive entries collapsed to their first
/// element.
#[derive(Debug, Clone, PartialEq)]
pub struct PreprocessedSeries {
    values: Vec<f64>,
    origin_index: Vec<usize>,
    source_len: usize,
}

impl PreprocessedSeries {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn origin_index(&self) -> &[usize] {
        &self.origin_index
    }

    /// Length of the series this was derived from.
    pub fn source_len(&self) -> usize {
        self.source_len
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Maps a position of this series to an index of the source series.
    ///
    /// The last position maps to the last source index so that a breakpoint
    /// list ending at `len() - 1` covers the whole source range, including a
    /// trailing run of repeated values.
    pub fn to_source(&self, pos: usize) -> usize {
        if pos + 1 == self.values.len() {
            self.source_len - 1
        } else {
            self.origin_index[pos]
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtremumKind {
    Minimum,
    Maximum,
}

impl ExtremumKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExtremumKind::Minimum => "min",
            ExtremumKind::Maximum => "max",
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            ExtremumKind::Minimum => ExtremumKind::Maximum,
            ExtremumKind::Maximum => ExtremumKind::Minimum,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Extremum {
    pub pos: usize,
    pub kind: ExtremumKind,
}

/// Parses rows of `y` or `x,y`. A first row whose first field is not a
/// number is treated as a header. Blank lines are ignored.
pub fn parse_csv(text: &str) -> Result<TimeSeries> {
    let mut columns: Option<usize> = None;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut first_row = true;

    for (line_no, raw) in text.split('\n').enumerate() {
        let row = line_no + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();

        if first_row {
            first_row = false;
            if fields[0].parse::<f64>().is_err() {
                check_width(row, fields.len())?;
                columns = Some(fields.len());
                continue;
            }
        }

        let width = *columns.get_or_insert(fields.len());
        check_width(row, width)?;
        if fields.len() != width {
            return Err(Error::ColumnCount {
                row,
                expected: width,
                found: fields.len(),
            });
        }

        let parsed = fields
            .iter()
            .map(|f| parse_field(row, f))
            .collect::<Result<Vec<f64>>>()?;
        let (x, y) = match parsed[..] {
            [y] => (xs.len() as f64, y),
            [x, y] => (x, y),
            _ => unreachable!("width checked above"),
        };
        if let Some(&prev) = xs.last() {
            if x <= prev {
                return Err(Error::NonIncreasingX { row, prev, next: x });
            }
        }
        xs.push(x);
        ys.push(y);
    }

    Ok(TimeSeries { xs, ys })
}

fn check_width(row: usize, found: usize) -> Result<()> {
    if found == 1 || found == 2 {
        Ok(())
    } else {
        Err(Error::ColumnCount {
            row,
            expected: 2,
            found,
        })
    }
}

fn parse_field(row: usize, field: &str) -> Result<f64> {
    let v: f64 = field.parse().map_err(|_| Error::MalformedNumber {
        row,
        field: field.to_string(),
    })?;
    if !v.is_finite() {
        return Err(Error::NonFinite {
            row,
            field: field.to_string(),
        });
    }
    Ok(v)
}

/// Keeps the first sample of each run of equal consecutive values.
pub fn dedup_consecutive(series: &TimeSeries) -> PreprocessedSeries {
    dedup_values(series.ys())
}

pub fn dedup_values(ys: &[f64]) -> PreprocessedSeries {
    let mut values = Vec::with_capacity(ys.len());
    let mut origin_index = Vec::with_capacity(ys.len());
    for (i, &y) in ys.iter().enumerate() {
        if values.last() != Some(&y) {
            values.push(y);
            origin_index.push(i);
        }
    }
    PreprocessedSeries {
        values,
        origin_index,
        source_len: ys.len(),
    }
}

/// Local extrema under strict inequalities; both endpoints are always
/// included. Kinds alternate.
pub fn find_extrema(series: &PreprocessedSeries) -> Result<Vec<Extremum>> {
    let v = series.values();
    let m = v.len();
    if m < 2 {
        return Err(Error::DegenerateSeries);
    }
    let mut out = Vec::new();
    for p in 0..m {
        let above_left = p == 0 || v[p] > v[p - 1];
        let above_right = p == m - 1 || v[p] > v[p + 1];
        let below_left = p == 0 || v[p] < v[p - 1];
        let below_right = p == m - 1 || v[p] < v[p + 1];
        if above_left && above_right {
            out.push(Extremum {
                pos: p,
                kind: ExtremumKind::Maximum,
            });
        } else if below_left && below_right {
            out.push(Extremum {
                pos: p,
                kind: ExtremumKind::Minimum,
            });
        }
    }
    Ok(out)
}
