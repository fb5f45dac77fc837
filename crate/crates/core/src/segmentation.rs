// SPDX-License-Identifier: MIT OR Apache-2.0

//! Budgeted optimal segmentation from scale labels.
//!
//! Keeping the extrema whose label is strictly larger than the
//! `(K + 2)`-th largest label gives an alternating selection of at most
//! `K + 1` points. Replacing the first and last of them by the series
//! endpoints yields a segmentation that no alternating segmentation with
//! as few segments can beat.
//!
//! Dropping a whole tie class can leave part of the budget unused. The
//! unused segments are spent by keeping the first or last selected
//! extremum as a breakpoint of its own instead of moving it to the series
//! endpoint, evaluated at the three largest cuts that fit in `K + 1`, `K`
//! and `K - 1` points. The cheapest candidate wins, and the plain cut wins
//! ties.
//!
//! [`segment_optimal`] works from a bounded buffer in `O(nK)`.
//! [`SpectrumIndex`] sorts the labels once, precomputes the error of every
//! cut in `O(n log n)`, and then answers any budget in constant time.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::labeling::{label_extrema, LabeledExtremum};
use crate::monotone::{segmentation_omafe, Direction};
use crate::range_error::RangeError;
use crate::series::{dedup_values, find_extrema, PreprocessedSeries, TimeSeries};

/// Breakpoints into the original series with per-segment direction and
/// error. Segment `k` spans `breakpoints[k]..=breakpoints[k + 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Segmentation {
    pub breakpoints: Vec<usize>,
    pub directions: Vec<Direction>,
    pub per_segment_error: Vec<f64>,
    pub total_error: f64,
}

impl Segmentation {
    /// One segment covering a series with fewer than two distinct values.
    pub fn trivial(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptySeries);
        }
        Ok(Self {
            breakpoints: vec![0, len - 1],
            directions: vec![Direction::Flat],
            per_segment_error: vec![0.0],
            total_error: 0.0,
        })
    }

    /// Builds a segmentation from breakpoints over the deduplicated series,
    /// reporting them in source index space.
    pub(crate) fn from_dedup(series: &PreprocessedSeries, breakpoints: &[usize]) -> Result<Self> {
        let err = segmentation_omafe(series.values(), breakpoints)?;
        let (directions, per_segment_error) = err.per_segment.into_iter().unzip();
        Ok(Self {
            breakpoints: breakpoints.iter().map(|&p| series.to_source(p)).collect(),
            directions,
            per_segment_error,
            total_error: err.total,
        })
    }

    pub fn segment_count(&self) -> usize {
        self.breakpoints.len() - 1
    }

    /// `(start, end)` of every segment, inclusive.
    pub fn segments(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.breakpoints.windows(2).map(|w| (w[0], w[1]))
    }
}

/// How the outermost selected extrema are treated. Anchored ends are moved
/// to the series endpoints; free ends stay and the series endpoint is added
/// as one more breakpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Ends {
    pub head_free: bool,
    pub tail_free: bool,
}

impl Ends {
    /// Candidate order; earlier entries win ties.
    const ALL: [Ends; 4] = [
        Ends {
            head_free: false,
            tail_free: false,
        },
        Ends {
            head_free: true,
            tail_free: false,
        },
        Ends {
            head_free: false,
            tail_free: true,
        },
        Ends {
            head_free: true,
            tail_free: true,
        },
    ];

    fn slot(self) -> usize {
        self.head_free as usize + 2 * self.tail_free as usize
    }

    /// Breakpoints for the sorted selection `points`, or `None` when a free
    /// end would coincide with the series endpoint.
    fn breakpoints(self, points: &[usize], len: usize) -> Option<Vec<usize>> {
        if points.len() < 2 {
            return (self == Ends::default()).then(|| vec![0, len - 1]);
        }
        let first = points[0];
        let last = points[points.len() - 1];
        if (self.head_free && first == 0) || (self.tail_free && last == len - 1) {
            return None;
        }
        let mut out = Vec::with_capacity(points.len() + 2);
        out.push(0);
        if self.head_free {
            out.push(first);
        }
        out.extend_from_slice(&points[1..points.len() - 1]);
        if self.tail_free {
            out.push(last);
        }
        out.push(len - 1);
        Some(out)
    }

    fn segment_count(self, selected: usize) -> usize {
        if selected < 2 {
            1
        } else {
            selected - 1 + self.head_free as usize + self.tail_free as usize
        }
    }
}

/// Largest tie-class boundary not above `rank`, for ranks sorted by
/// descending scale.
fn class_start(scales: impl Fn(usize) -> f64, rank: usize) -> usize {
    let s = scales(rank);
    let mut j = rank;
    while j > 0 && scales(j - 1) == s {
        j -= 1;
    }
    j
}

/// The three cuts worth considering for budget `k`, given that more than
/// `k + 1` extrema exist. `start_of(r)` maps a rank to its class start.
fn candidate_cuts(k: usize, start_of: impl Fn(usize) -> usize) -> [usize; 3] {
    [start_of(k + 1), start_of(k), start_of(k - 1)]
}

/// Selects breakpoints from labeled extrema with a segment budget of `k`.
///
/// When there are at most `k + 1` extrema all of them are used and the
/// error is zero. Otherwise the `k + 2` largest labels are kept in a sorted
/// buffer while scanning in position order, and the buffered entries
/// sharing the smallest retained label are dropped, possibly with free
/// ends as described in the module docs.
pub fn segment_optimal(
    labeled: &[LabeledExtremum],
    k: usize,
    series: &PreprocessedSeries,
) -> Result<Segmentation> {
    if k < 1 {
        return Err(Error::InvalidBudget(k));
    }
    let len = series.len();
    if len < 2 || labeled.len() < 2 {
        return Err(Error::DegenerateSeries);
    }
    if labeled.len() <= k + 1 {
        let all: Vec<usize> = labeled.iter().map(|l| l.pos).collect();
        return Segmentation::from_dedup(series, &all);
    }

    let cap = k + 2;
    let mut buf: Vec<(f64, usize)> = Vec::with_capacity(cap + 1);
    for l in labeled {
        let at = buf.partition_point(|&(s, _)| s >= l.scale);
        if at < cap {
            buf.insert(at, (l.scale, l.pos));
            buf.truncate(cap);
        }
    }

    let values = series.values();
    let mut best: Option<(f64, Vec<usize>)> = None;
    for cut in candidate_cuts(k, |r| class_start(|i| buf[i].0, r)) {
        let mut points: Vec<usize> = buf[..cut].iter().map(|&(_, p)| p).collect();
        points.sort_unstable();
        for ends in Ends::ALL {
            if ends.segment_count(points.len()) > k {
                continue;
            }
            let Some(bps) = ends.breakpoints(&points, len) else {
                continue;
            };
            let err = segmentation_omafe(values, &bps)?.total;
            if best.as_ref().is_none_or(|(e, _)| err < *e) {
                best = Some((err, bps));
            }
        }
    }
    let (_, bps) = best.expect("the anchored cut always fits the budget");
    Segmentation::from_dedup(series, &bps)
}

/// Dedup, extract extrema, label, and segment with budget `k`. Series with
/// fewer than two distinct consecutive values get a single flat segment.
pub fn optimal_segmentation(series: &TimeSeries, k: usize) -> Result<Segmentation> {
    if k < 1 {
        return Err(Error::InvalidBudget(k));
    }
    let pre = dedup_values(series.ys());
    if pre.len() < 2 {
        return Segmentation::trivial(series.len());
    }
    let extrema = find_extrema(&pre)?;
    let labeled = label_extrema(&pre, &extrema)?;
    segment_optimal(&labeled, k, &pre)
}

/// Labels sorted by scale, with the error of every cut precomputed, for
/// constant-time budget queries.
#[derive(Debug, Clone)]
pub struct SpectrumIndex {
    by_scale: Vec<LabeledExtremum>,
    earliest_of_scale: Vec<usize>,
    by_position: Vec<LabeledExtremum>,
    series: PreprocessedSeries,
    /// Indexed by cut; error per [`Ends`] slot, NaN where not applicable or
    /// where the cut is not a class boundary.
    cut_error: Vec<[f64; 4]>,
}

/// Result of a budget query: the extrema at ranks `0..included` of the scale
/// order, with the given end treatment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryDescriptor {
    pub k: usize,
    pub included: usize,
    pub ends: Ends,
    extrema: usize,
}

impl QueryDescriptor {
    pub fn selects_all(&self) -> bool {
        self.included == self.extrema
    }
}

/// Nonnegative floats ordered by their bit patterns.
type ErrorMultiset = BTreeMap<u64, usize>;

fn ms_insert(ms: &mut ErrorMultiset, e: f64) {
    *ms.entry(e.to_bits()).or_default() += 1;
}

fn ms_remove(ms: &mut ErrorMultiset, e: f64) {
    let key = e.to_bits();
    let n = ms.get_mut(&key).expect("segment error was recorded");
    *n -= 1;
    if *n == 0 {
        ms.remove(&key);
    }
}

fn ms_max(ms: &ErrorMultiset) -> f64 {
    ms.keys().next_back().map_or(0.0, |&b| f64::from_bits(b))
}

impl SpectrumIndex {
    pub fn build(labeled: &[LabeledExtremum], series: &PreprocessedSeries) -> Result<Self> {
        if series.len() < 2 || labeled.len() < 2 {
            return Err(Error::DegenerateSeries);
        }
        let mut by_scale = labeled.to_vec();
        // stable, so ties keep position order
        by_scale.sort_by(|a, b| b.scale.total_cmp(&a.scale));

        let mut earliest_of_scale = Vec::with_capacity(by_scale.len());
        for (r, l) in by_scale.iter().enumerate() {
            let earliest = match r {
                0 => 0,
                _ if by_scale[r - 1].scale == l.scale => earliest_of_scale[r - 1],
                _ => r,
            };
            earliest_of_scale.push(earliest);
        }

        let cut_error = cut_errors(&by_scale, series.values());
        Ok(Self {
            by_scale,
            earliest_of_scale,
            by_position: labeled.to_vec(),
            series: series.clone(),
            cut_error,
        })
    }

    pub fn from_series(series: &TimeSeries) -> Result<Self> {
        let pre = dedup_values(series.ys());
        let extrema = find_extrema(&pre)?;
        let labeled = label_extrema(&pre, &extrema)?;
        Self::build(&labeled, &pre)
    }

    pub fn by_scale(&self) -> &[LabeledExtremum] {
        &self.by_scale
    }

    pub fn earliest_of_scale(&self) -> &[usize] {
        &self.earliest_of_scale
    }

    pub fn by_position(&self) -> &[LabeledExtremum] {
        &self.by_position
    }

    pub fn series(&self) -> &PreprocessedSeries {
        &self.series
    }

    /// Number of labeled extrema.
    pub fn len(&self) -> usize {
        self.by_scale.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_scale.is_empty()
    }

    /// Constant-time query: which ranks survive a budget of `k` segments,
    /// and the resulting error.
    pub fn query(&self, k: usize) -> Result<(QueryDescriptor, f64)> {
        if k < 1 {
            return Err(Error::InvalidBudget(k));
        }
        let m = self.by_scale.len();
        let mut best = QueryDescriptor {
            k,
            included: m,
            ends: Ends::default(),
            extrema: m,
        };
        if m <= k + 1 {
            return Ok((best, 0.0));
        }

        let mut best_err = f64::INFINITY;
        for cut in candidate_cuts(k, |r| self.earliest_of_scale[r]) {
            for ends in Ends::ALL {
                let err = self.cut_error[cut][ends.slot()];
                if err.is_nan() || ends.segment_count(cut) > k {
                    continue;
                }
                if err < best_err {
                    best_err = err;
                    best.included = cut;
                    best.ends = ends;
                }
            }
        }
        Ok((best, best_err))
    }

    /// Turns a query result into concrete breakpoints in `O(K log K)`.
    pub fn materialize(&self, cut: &QueryDescriptor) -> Result<Segmentation> {
        if cut.extrema != self.by_scale.len() || cut.included > cut.extrema {
            return Err(Error::DescriptorMismatch);
        }
        let mut points: Vec<usize> = self.by_scale[..cut.included]
            .iter()
            .map(|l| l.pos)
            .collect();
        points.sort_unstable();
        let bps = cut
            .ends
            .breakpoints(&points, self.series.len())
            .ok_or(Error::DescriptorMismatch)?;
        Segmentation::from_dedup(&self.series, &bps)
    }

    /// `(k, omafe)` for `k = 1..=max_k`; non-increasing in `k`.
    pub fn curve(&self, max_k: usize) -> Vec<(usize, f64)> {
        (1..=max_k)
            .map(|k| (k, self.query(k).expect("k >= 1").1))
            .collect()
    }
}

/// Error of every end treatment at every class boundary, found by adding
/// the extrema in scale order and tracking the segments between
/// consecutive selected positions.
fn cut_errors(by_scale: &[LabeledExtremum], values: &[f64]) -> Vec<[f64; 4]> {
    let len = values.len();
    let m = by_scale.len();
    let tree = RangeError::new(values);
    let err = |a: usize, b: usize| tree.omafe(a, b);

    let mut out = vec![[f64::NAN; 4]; m + 1];
    let mut points = BTreeSet::new();
    let mut inner = ErrorMultiset::new();

    for cut in 0..=m {
        let boundary = cut == 0 || cut == m || by_scale[cut].scale != by_scale[cut - 1].scale;
        if boundary {
            out[cut] = ends_errors(&points, &mut inner, len, &err);
        }
        if cut == m {
            break;
        }
        let p = by_scale[cut].pos;
        let pred = points.range(..p).next_back().copied();
        let succ = points.range(p + 1..).next().copied();
        if let (Some(a), Some(b)) = (pred, succ) {
            ms_remove(&mut inner, err(a, b));
        }
        if let Some(a) = pred {
            ms_insert(&mut inner, err(a, p));
        }
        if let Some(b) = succ {
            ms_insert(&mut inner, err(p, b));
        }
        points.insert(p);
    }
    out
}

fn ends_errors(
    points: &BTreeSet<usize>,
    segs: &mut ErrorMultiset,
    len: usize,
    err: &impl Fn(usize, usize) -> f64,
) -> [f64; 4] {
    let mut row = [f64::NAN; 4];
    if points.len() < 2 {
        row[0] = err(0, len - 1);
        return row;
    }
    let mut fwd = points.iter().copied();
    let (p0, p1) = (fwd.next().unwrap(), fwd.next().unwrap());
    let mut back = points.iter().rev().copied();
    let (pl, pl1) = (back.next().unwrap(), back.next().unwrap());
    let head = (p0 != 0).then(|| err(0, p0));
    let tail = (pl != len - 1).then(|| err(pl, len - 1));
    let slot = |h: bool, t: bool| {
        Ends {
            head_free: h,
            tail_free: t,
        }
        .slot()
    };

    if points.len() == 2 {
        row[slot(false, false)] = err(0, len - 1);
        if let Some(h) = head {
            row[slot(true, false)] = h.max(err(p0, len - 1));
        }
        if let Some(t) = tail {
            row[slot(false, true)] = err(0, pl).max(t);
        }
        if let (Some(h), Some(t)) = (head, tail) {
            row[slot(true, true)] = h.max(err(p0, pl)).max(t);
        }
        return row;
    }

    let first = err(p0, p1);
    let last = err(pl1, pl);
    let all = ms_max(segs);
    ms_remove(segs, first);
    ms_remove(segs, last);
    let middle = ms_max(segs);
    ms_insert(segs, first);
    ms_insert(segs, last);

    let head_anchored = err(0, p1);
    let tail_anchored = err(pl1, len - 1);
    row[slot(false, false)] = middle.max(head_anchored).max(tail_anchored);
    if let Some(h) = head {
        row[slot(true, false)] = h.max(first).max(middle).max(tail_anchored);
    }
    if let Some(t) = tail {
        row[slot(false, true)] = head_anchored.max(middle).max(last).max(t);
    }
    if let (Some(h), Some(t)) = (head, tail) {
        row[slot(true, true)] = h.max(all).max(t);
    }
    row
}
