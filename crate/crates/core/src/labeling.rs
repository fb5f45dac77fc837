// SPDX-License-Identifier: MIT OR Apache-2.0

//! Scale labeling of extrema in linear time.
//!
//! Every extremum is an endpoint of at least one maximal pair, and its
//! label is the largest rise or fall among those pairs. A single stack
//! pass finds them: minima on the stack strictly increase and maxima
//! strictly decrease from bottom to top, and the bottom two entries are the
//! global extremes seen so far. When a new extremum reaches or passes the
//! second entry from the top, the top two entries close a maximal pair and
//! are labeled. Non-strict comparisons mean that of two equal-valued
//! same-kind extrema the earlier one takes the smaller label of the swing
//! between them, which leaves an unambiguous alternating selection at every
//! scale.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{Extremum, ExtremumKind, PreprocessedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LabeledExtremum {
    pub pos: usize,
    #[serde(serialize_with = "kind_str")]
    pub kind: ExtremumKind,
    pub scale: f64,
}

fn kind_str<S: serde::Serializer>(k: &ExtremumKind, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(k.as_str())
}

/// Labels every extremum; output is in position order.
pub fn label_extrema(
    series: &PreprocessedSeries,
    extrema: &[Extremum],
) -> Result<Vec<LabeledExtremum>> {
    label_with(series.values(), extrema, |_| {})
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub(crate) struct StackStats {
    pub pushes: usize,
    pub pops: usize,
}

/// The labeling pass. `observe` sees the stack (extremum indices, bottom
/// first) after every push.
pub(crate) fn label_with(
    values: &[f64],
    extrema: &[Extremum],
    observe: impl FnMut(&[usize]),
) -> Result<Vec<LabeledExtremum>> {
    let (scales, _) = label_counted(values, extrema, observe)?;
    Ok(extrema
        .iter()
        .zip(scales)
        .map(|(e, scale)| LabeledExtremum {
            pos: e.pos,
            kind: e.kind,
            scale,
        })
        .collect())
}

pub(crate) fn label_counted(
    values: &[f64],
    extrema: &[Extremum],
    mut observe: impl FnMut(&[usize]),
) -> Result<(Vec<f64>, StackStats)> {
    if values.len() < 2 || extrema.len() < 2 {
        return Err(Error::DegenerateSeries);
    }
    let value = |i: usize| values[extrema[i].pos];
    let gap = |a: usize, b: usize| (value(a) - value(b)).abs();

    let mut scale = vec![f64::NAN; extrema.len()];
    let mut stack: Vec<usize> = Vec::with_capacity(extrema.len());
    let mut stats = StackStats::default();

    for (e, ext) in extrema.iter().enumerate() {
        let reaches = |stack: &[usize]| {
            let second = value(stack[stack.len() - 2]);
            match ext.kind {
                ExtremumKind::Minimum => value(e) <= second,
                ExtremumKind::Maximum => value(e) >= second,
            }
        };

        while stack.len() > 2 && reaches(&stack) {
            let first = stack.pop().unwrap();
            let second = stack.pop().unwrap();
            let delta = gap(first, second);
            scale[first] = delta;
            scale[second] = delta;
            stats.pops += 2;
        }
        if stack.len() == 2 && reaches(&stack) {
            scale[stack[0]] = gap(stack[1], stack[0]);
            stack.remove(0);
            stats.pops += 1;
        }
        stack.push(e);
        stats.pushes += 1;
        observe(&stack);
    }

    while stack.len() > 2 {
        let first = stack.pop().unwrap();
        scale[first] = gap(first, stack[stack.len() - 1]);
        stats.pops += 1;
    }
    let delta = gap(stack[0], stack[1]);
    scale[stack[0]] = delta;
    scale[stack[1]] = delta;
    stats.pops += 2;

    debug_assert!(scale.iter().all(|s| !s.is_nan()));
    Ok((scale, stats))
}
