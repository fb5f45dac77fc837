// SPDX-License-Identifier: MIT OR Apache-2.0

//! Exhaustive reference implementations for tests. Deliberately naive.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::monotone::{segmentation_omafe, Direction};
use crate::series::{dedup_values, find_extrema, ExtremumKind};

pub const SEGMENTATION_LIMIT: usize = 20;
pub const PAIR_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub best_error: f64,
    pub best_breakpoints: Vec<usize>,
}

/// Minimum error over every alternating segmentation with at most `k`
/// segments. A segment's sign comes from its endpoint difference, with
/// zero counted as positive. Ties keep the lexicographically smallest
/// breakpoint set.
pub fn brute_force_omafe(values: &[f64], k: usize) -> Result<OracleResult> {
    let n = values.len();
    if n > SEGMENTATION_LIMIT {
        return Err(Error::OracleLimit {
            len: n,
            limit: SEGMENTATION_LIMIT,
        });
    }
    if k < 1 {
        return Err(Error::InvalidBudget(k));
    }
    if n == 0 {
        return Err(Error::EmptySeries);
    }
    if n == 1 {
        return Ok(OracleResult {
            best_error: 0.0,
            best_breakpoints: vec![0, 0],
        });
    }

    let interior = n - 2;
    let mut best: Option<OracleResult> = None;
    for mask in 0u32..(1 << interior) {
        if mask.count_ones() as usize > k - 1 {
            continue;
        }
        let bps: Vec<usize> = std::iter::once(0)
            .chain((0..interior).filter(|b| mask >> b & 1 == 1).map(|b| b + 1))
            .chain(std::iter::once(n - 1))
            .collect();
        let rising: Vec<bool> = bps
            .windows(2)
            .map(|w| values[w[1]] >= values[w[0]])
            .collect();
        if rising.windows(2).any(|s| s[0] == s[1]) {
            continue;
        }
        let err = segmentation_omafe(values, &bps)?.total;
        let better = match &best {
            None => true,
            Some(b) => err < b.best_error || (err == b.best_error && bps < b.best_breakpoints),
        };
        if better {
            best = Some(OracleResult {
                best_error: err,
                best_breakpoints: bps,
            });
        }
    }
    Ok(best.expect("the single segment always alternates"))
}

/// A value shifted by an infinitesimal multiple of `eps`, compared
/// lexicographically.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Perturbed(f64, i64);

impl Perturbed {
    fn sub(self, o: Perturbed) -> Perturbed {
        Perturbed(self.0 - o.0, self.1 - o.1)
    }

    fn cmp(self, o: Perturbed) -> Ordering {
        self.0.total_cmp(&o.0).then(self.1.cmp(&o.1))
    }

    fn abs(self) -> Perturbed {
        if self.cmp(Perturbed(0.0, 0)) == Ordering::Less {
            Perturbed(-self.0, -self.1)
        } else {
            self
        }
    }

    fn lt(self, o: Perturbed) -> bool {
        self.cmp(o) == Ordering::Less
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarPair {
    pub start: usize,
    pub end: usize,
    pub scale: f64,
    pub direction: Direction,
    perturbed: Perturbed,
}

/// Every pair `(i, j)` whose interior stays strictly within the endpoint
/// gap of both endpoints. Equal values are separated by nudging the `i`-th
/// maximum up and the `i`-th minimum down by `i * eps`, so later
/// same-valued extrema dominate earlier ones. Expects no consecutive
/// repeats.
pub fn enumerate_pairs(values: &[f64]) -> Result<Vec<StarPair>> {
    let n = values.len();
    if n > PAIR_LIMIT {
        return Err(Error::OracleLimit {
            len: n,
            limit: PAIR_LIMIT,
        });
    }
    let w: Vec<Perturbed> = (0..n)
        .map(|i| {
            let v = values[i];
            let above = |j: Option<usize>| j.is_none_or(|j| v > values[j]);
            let below = |j: Option<usize>| j.is_none_or(|j| v < values[j]);
            let (l, r) = (i.checked_sub(1), (i + 1 < n).then_some(i + 1));
            let i = i as i64;
            if n < 2 {
                Perturbed(v, 0)
            } else if above(l) && above(r) {
                Perturbed(v, i)
            } else if below(l) && below(r) {
                Perturbed(v, -i)
            } else {
                Perturbed(v, 0)
            }
        })
        .collect();

    let zero = Perturbed(0.0, 0);
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let s = w[j].sub(w[i]).abs();
            if !zero.lt(s) {
                continue;
            }
            let inside =
                (i + 1..j).all(|z| w[z].sub(w[i]).abs().lt(s) && w[j].sub(w[z]).abs().lt(s));
            if inside {
                out.push(StarPair {
                    start: i,
                    end: j,
                    scale: (values[j] - values[i]).abs(),
                    direction: if w[i].lt(w[j]) {
                        Direction::Increasing
                    } else {
                        Direction::Decreasing
                    },
                    perturbed: s,
                });
            }
        }
    }
    Ok(out)
}

/// Pairs not contained in a larger same-direction pair, unless an
/// opposite-direction pair lies between the two.
pub fn maximal_pairs(pairs: &[StarPair]) -> Vec<StarPair> {
    let contains = |z: &StarPair, x: &StarPair| z.start <= x.start && x.end <= z.end;
    pairs
        .iter()
        .filter(|x| {
            !pairs.iter().any(|z| {
                z.direction == x.direction
                    && x.perturbed.lt(z.perturbed)
                    && contains(z, x)
                    && !pairs
                        .iter()
                        .any(|w| w.direction != x.direction && contains(z, w) && contains(w, x))
            })
        })
        .copied()
        .collect()
}

/// Labels from first principles: each extremum of the deduplicated series
/// gets the largest scale among maximal pairs ending at it. Returns
/// `(position, kind, scale)` in position order.
pub fn oracle_labels(values: &[f64]) -> Result<Vec<(usize, ExtremumKind, f64)>> {
    let pre = dedup_values(values);
    let extrema = find_extrema(&pre)?;
    let maximal = maximal_pairs(&enumerate_pairs(pre.values())?);
    extrema
        .iter()
        .map(|e| {
            maximal
                .iter()
                .filter(|p| p.start == e.pos || p.end == e.pos)
                .max_by(|a, b| a.perturbed.cmp(b.perturbed))
                .map(|p| (e.pos, e.kind, p.scale))
                .ok_or(Error::DegenerateSeries)
        })
        .collect()
}
