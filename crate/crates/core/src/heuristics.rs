// SPDX-License-Identifier: MIT OR Apache-2.0

//! Piecewise-linear top-down and bottom-up segmentation, used as baselines.
//!
//! Both heuristics score ranges by the sum of squared residuals of their
//! least-squares line, available in constant time from prefix moments.
//! Their output is turned into a monotone segmentation by merging
//! neighbouring ranges whose endpoint differences share a sign, with zero
//! counted as positive.

use crate::error::{Error, Result};
use crate::monotone::segmentation_omafe;
use crate::segmentation::Segmentation;
use crate::series::TimeSeries;

/// Sums over an index range, of coordinates taken relative to the first
/// sample of the series.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RangeSums {
    pub count: f64,
    pub x: f64,
    pub y: f64,
    pub xx: f64,
    pub xy: f64,
    pub yy: f64,
}

/// Unevaluated sum `hi + lo` carrying about twice the precision of `f64`.
/// Prefix sums of squares grow far beyond the sums over a short range, so
/// plain subtraction of two prefixes loses most of the range's digits.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct Wide {
    hi: f64,
    lo: f64,
}

impl Wide {
    fn exact(v: f64) -> Self {
        Wide { hi: v, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        Wide {
            hi: s,
            lo: (a - (s - bb)) + (b - bb),
        }
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let s = hi + lo;
        Wide {
            hi: s,
            lo: lo - (s - hi),
        }
    }

    fn add(self, o: Wide) -> Self {
        let s = Self::two_sum(self.hi, o.hi);
        let t = Self::two_sum(self.lo, o.lo);
        let r = Self::renorm(s.hi, s.lo + t.hi);
        Self::renorm(r.hi, r.lo + t.lo)
    }

    fn sub(self, o: Wide) -> Self {
        self.add(Wide {
            hi: -o.hi,
            lo: -o.lo,
        })
    }

    fn mul(self, o: Wide) -> Self {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p) + (self.hi * o.lo + self.lo * o.hi);
        Self::renorm(p, e)
    }

    fn div(self, d: f64) -> Self {
        let q = self.hi / d;
        let r = self.sub(Wide::exact(q).mul(Wide::exact(d)));
        Self::renorm(q, r.hi / d)
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct WideSums {
    x: Wide,
    y: Wide,
    xx: Wide,
    xy: Wide,
    yy: Wide,
}

impl WideSums {
    fn add(self, x: f64, y: f64) -> Self {
        let (x, y) = (Wide::exact(x), Wide::exact(y));
        Self {
            x: self.x.add(x),
            y: self.y.add(y),
            xx: self.xx.add(x.mul(x)),
            xy: self.xy.add(x.mul(y)),
            yy: self.yy.add(y.mul(y)),
        }
    }

    fn sub(self, o: Self) -> Self {
        Self {
            x: self.x.sub(o.x),
            y: self.y.sub(o.y),
            xx: self.xx.sub(o.xx),
            xy: self.xy.sub(o.xy),
            yy: self.yy.sub(o.yy),
        }
    }
}

/// Prefix moments; entry `i` sums samples `0..i`.
#[derive(Debug, Clone)]
pub struct RangeMoments {
    prefix: Vec<WideSums>,
}

impl RangeMoments {
    pub fn build(series: &TimeSeries) -> Self {
        let (x0, y0) = match (series.xs().first(), series.ys().first()) {
            (Some(&x), Some(&y)) => (x, y),
            _ => (0.0, 0.0),
        };
        let mut prefix = Vec::with_capacity(series.len() + 1);
        let mut acc = WideSums::default();
        prefix.push(acc);
        for (&x, &y) in series.xs().iter().zip(series.ys()) {
            acc = acc.add(x - x0, y - y0);
            prefix.push(acc);
        }
        Self { prefix }
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.prefix.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sums over the half-open range `lo..hi`; empty when `lo == hi`.
    pub fn sums(&self, lo: usize, hi: usize) -> RangeSums {
        let s = self.prefix[hi].sub(self.prefix[lo]);
        RangeSums {
            count: (hi - lo) as f64,
            x: s.x.value(),
            y: s.y.value(),
            xx: s.xx.value(),
            xy: s.xy.value(),
            yy: s.yy.value(),
        }
    }

    /// Squared residual sum of the least-squares line through samples
    /// `p..=q`.
    pub fn regression_error(&self, p: usize, q: usize) -> Result<f64> {
        if p > q || q >= self.len() {
            return Err(Error::IndexRange {
                lo: p,
                hi: q,
                len: self.len(),
            });
        }
        Ok(self.sse(p, q))
    }

    #[inline]
    fn sse(&self, p: usize, q: usize) -> f64 {
        if q - p < 2 {
            return 0.0;
        }
        let s = self.prefix[q + 1].sub(self.prefix[p]);
        let n = (q + 1 - p) as f64;
        let sxx = s.xx.sub(s.x.mul(s.x).div(n)).value();
        let sxy = s.xy.sub(s.x.mul(s.y).div(n)).value();
        let syy = s.yy.sub(s.y.mul(s.y).div(n)).value();
        (syy - sxy * sxy / sxx).max(0.0)
    }
}

/// Abutting inclusive ranges covering `0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSegmentation {
    pub ranges: Vec<(usize, usize)>,
    pub sse: Vec<f64>,
}

impl LinearSegmentation {
    pub fn len(&self) -> usize {
        self.ranges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }
}

/// Repeatedly splits the worst-fitting range at its best split point until
/// there are `k` ranges or nothing left to split.
pub fn top_down(series: &TimeSeries, k: usize) -> Result<LinearSegmentation> {
    if k < 1 {
        return Err(Error::InvalidBudget(k));
    }
    let n = series.len();
    if n == 0 {
        return Err(Error::EmptySeries);
    }
    let m = RangeMoments::build(series);
    let mut ranges = vec![(0, n - 1, m.sse(0, n - 1))];

    while ranges.len() < k {
        let mut pick: Option<usize> = None;
        for (idx, &(i, j, e)) in ranges.iter().enumerate() {
            if j > i && pick.is_none_or(|p| e > ranges[p].2) {
                pick = Some(idx);
            }
        }
        let Some(idx) = pick else { break };
        let (i, j, _) = ranges[idx];

        let mut best = (i, f64::INFINITY);
        for l in i..j {
            let cost = m.sse(i, l) + m.sse(l + 1, j);
            if cost < best.1 {
                best = (l, cost);
            }
        }
        let l = best.0;
        ranges[idx] = (i, l, m.sse(i, l));
        ranges.insert(idx + 1, (l + 1, j, m.sse(l + 1, j)));
    }

    Ok(LinearSegmentation {
        ranges: ranges.iter().map(|&(i, j, _)| (i, j)).collect(),
        sse: ranges.iter().map(|&(_, _, e)| e).collect(),
    })
}

/// Starts from single samples and merges the cheapest adjacent pair until
/// `k` ranges remain. Each merge rescans all pairs, `O(n (n - k))` overall.
pub fn bottom_up(series: &TimeSeries, k: usize) -> Result<LinearSegmentation> {
    let n = series.len();
    if k < 1 || k > n {
        return Err(Error::BudgetOutOfRange { k, max: n });
    }
    let m = RangeMoments::build(series);
    let mut ranges: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    let merge_cost =
        |a: (usize, usize), b: (usize, usize)| m.sse(a.0, b.1) - m.sse(a.0, a.1) - m.sse(b.0, b.1);
    let mut costs: Vec<f64> = ranges.windows(2).map(|w| merge_cost(w[0], w[1])).collect();

    while ranges.len() > k {
        let mut at = 0;
        for (i, &c) in costs.iter().enumerate() {
            if c < costs[at] {
                at = i;
            }
        }
        ranges[at].1 = ranges[at + 1].1;
        ranges.remove(at + 1);
        costs.remove(at);
        if at > 0 {
            costs[at - 1] = merge_cost(ranges[at - 1], ranges[at]);
        }
        if at + 1 < ranges.len() {
            costs[at] = merge_cost(ranges[at], ranges[at + 1]);
        }
    }

    let sse = ranges.iter().map(|&(a, b)| m.sse(a, b)).collect();
    Ok(LinearSegmentation { ranges, sse })
}

/// Merges consecutive ranges with the same endpoint sign into a monotone
/// segmentation. Neighbouring ranges `[a, b]` and `[b + 1, c]` share the
/// breakpoint `b + 1`.
pub fn aggregate_signs(series: &TimeSeries, lin: &LinearSegmentation) -> Result<Segmentation> {
    let n = series.len();
    check_cover(n, lin)?;
    if n < 2 {
        return Segmentation::trivial(n);
    }
    let ys = series.ys();

    let mut cuts: Vec<usize> = lin.ranges.iter().map(|&(a, _)| a).collect();
    if *cuts.last().unwrap() != n - 1 {
        cuts.push(n - 1);
    }

    let rising = |a: usize, b: usize| ys[b] - ys[a] >= 0.0;
    let mut breakpoints = vec![0];
    for w in cuts.windows(3) {
        if rising(w[0], w[1]) != rising(w[1], w[2]) {
            breakpoints.push(w[1]);
        }
    }
    breakpoints.push(n - 1);

    let err = segmentation_omafe(ys, &breakpoints)?;
    let (directions, per_segment_error) = err.per_segment.into_iter().unzip();
    Ok(Segmentation {
        breakpoints,
        directions,
        per_segment_error,
        total_error: err.total,
    })
}

fn check_cover(n: usize, lin: &LinearSegmentation) -> Result<()> {
    let mut next = 0;
    for &(a, b) in &lin.ranges {
        if a != next || b < a {
            return Err(Error::Breakpoints(format!(
                "range [{a}, {b}] does not continue at {next}"
            )));
        }
        next = b + 1;
    }
    if next != n || n == 0 {
        return Err(Error::Breakpoints(format!(
            "ranges cover 0..{next}, series has {n} samples"
        )));
    }
    Ok(())
}
