// SPDX-License-Identifier: MIT OR Apache-2.0

//! Best l∞ monotone approximation of a run of values.
//!
//! For an increasing fit the upper envelope is the running maximum from the
//! left and the lower envelope the running minimum from the right; their
//! midpoint is an optimal approximant and half their largest gap is the
//! error. The decreasing case mirrors this. A segment whose endpoint values
//! are equal has no direction and is approximated by its midrange.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
    Flat,
}

impl Direction {
    /// Direction implied by a segment's endpoint values.
    pub fn from_endpoints(first: f64, last: f64) -> Self {
        if last > first {
            Direction::Increasing
        } else if last < first {
            Direction::Decreasing
        } else {
            Direction::Flat
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Increasing => "increasing",
            Direction::Decreasing => "decreasing",
            Direction::Flat => "flat",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneFit {
    pub fit: Vec<f64>,
    pub error: f64,
}

/// Returns `(upper, lower)` envelopes for an increasing or decreasing fit.
pub fn monotone_envelopes(values: &[f64], direction: Direction) -> Result<(Vec<f64>, Vec<f64>)> {
    if values.is_empty() {
        return Err(Error::EmptySeries);
    }
    let prefix = |pick: fn(f64, f64) -> f64| -> Vec<f64> {
        let mut acc = values[0];
        values
            .iter()
            .map(|&v| {
                acc = pick(acc, v);
                acc
            })
            .collect()
    };
    let suffix = |pick: fn(f64, f64) -> f64| -> Vec<f64> {
        let mut out = values.to_vec();
        for i in (0..out.len().saturating_sub(1)).rev() {
            out[i] = pick(out[i], out[i + 1]);
        }
        out
    };
    match direction {
        Direction::Increasing => Ok((prefix(f64::max), suffix(f64::min))),
        Direction::Decreasing => Ok((suffix(f64::max), prefix(f64::min))),
        Direction::Flat => Err(Error::FlatEnvelope),
    }
}

pub fn best_monotone_fit(values: &[f64], direction: Direction) -> Result<MonotoneFit> {
    if values.is_empty() {
        return Err(Error::EmptySeries);
    }
    if direction == Direction::Flat {
        let (lo, hi) = min_max(values);
        return Ok(MonotoneFit {
            fit: vec![(hi + lo) / 2.0; values.len()],
            error: (hi - lo) / 2.0,
        });
    }
    let (upper, lower) = monotone_envelopes(values, direction)?;
    let mut gap = 0.0f64;
    let fit = upper
        .iter()
        .zip(&lower)
        .map(|(&u, &l)| {
            gap = gap.max(u - l);
            (u + l) / 2.0
        })
        .collect();
    Ok(MonotoneFit {
        fit,
        error: gap / 2.0,
    })
}

fn min_max(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
}

/// Largest `values[i] - values[j]` over `i <= j` (the drawdown), or the
/// largest rise for a decreasing direction. Single pass, no allocation.
///
/// Each candidate gap is the same subtraction the envelopes produce, so
/// half of this equals the envelope error bit for bit.
fn adverse_move(values: &[f64], direction: Direction) -> f64 {
    let mut gap = 0.0f64;
    match direction {
        Direction::Increasing => {
            let mut peak = f64::NEG_INFINITY;
            for &v in values {
                peak = peak.max(v);
                gap = gap.max(peak - v);
            }
        }
        Direction::Decreasing => {
            let mut trough = f64::INFINITY;
            for &v in values {
                trough = trough.min(v);
                gap = gap.max(v - trough);
            }
        }
        Direction::Flat => {
            let (lo, hi) = min_max(values);
            gap = hi - lo;
        }
    }
    gap
}

/// Direction and OMAFE of the inclusive slice `values[lo..=hi]`.
pub fn segment_omafe(values: &[f64], lo: usize, hi: usize) -> Result<(Direction, f64)> {
    if lo > hi || hi >= values.len() {
        return Err(Error::IndexRange {
            lo,
            hi,
            len: values.len(),
        });
    }
    let slice = &values[lo..=hi];
    let direction = Direction::from_endpoints(values[lo], values[hi]);
    Ok((direction, adverse_move(slice, direction) / 2.0))
}

/// Segment error summary of a breakpoint list.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentationError {
    pub total: f64,
    pub per_segment: Vec<(Direction, f64)>,
}

/// OMAFE of the segmentation whose inclusive intervals are
/// `[b[k], b[k + 1]]`; neighbouring segments share their boundary sample.
pub fn segmentation_omafe(values: &[f64], breakpoints: &[usize]) -> Result<SegmentationError> {
    validate_breakpoints(values.len(), breakpoints)?;
    let per_segment = breakpoints
        .windows(2)
        .map(|w| segment_omafe(values, w[0], w[1]))
        .collect::<Result<Vec<_>>>()?;
    let total = per_segment.iter().fold(0.0f64, |acc, &(_, e)| acc.max(e));
    Ok(SegmentationError { total, per_segment })
}

pub(crate) fn validate_breakpoints(len: usize, breakpoints: &[usize]) -> Result<()> {
    if len < 2 {
        return Err(Error::Breakpoints(format!(
            "series of length {len} cannot be segmented"
        )));
    }
    if breakpoints.len() < 2 {
        return Err(Error::Breakpoints("need at least two breakpoints".into()));
    }
    if breakpoints[0] != 0 || *breakpoints.last().unwrap() != len - 1 {
        return Err(Error::Breakpoints(format!(
            "must start at 0 and end at {}",
            len - 1
        )));
    }
    if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Breakpoints("must be strictly increasing".into()));
    }
    Ok(())
}
