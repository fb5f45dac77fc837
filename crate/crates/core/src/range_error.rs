// SPDX-License-Identifier: MIT OR Apache-2.0

use crate::monotone::Direction;

#[derive(Debug, Clone, Copy)]
struct Node {
    max: f64,
    min: f64,
    /// largest `v[i] - v[j]` with `i <= j`
    fall: f64,
    /// largest `v[j] - v[i]` with `i <= j`
    rise: f64,
}

impl Node {
    const EMPTY: Node = Node {
        max: f64::NEG_INFINITY,
        min: f64::INFINITY,
        fall: 0.0,
        rise: 0.0,
    };

    fn leaf(v: f64) -> Self {
        Node {
            max: v,
            min: v,
            fall: 0.0,
            rise: 0.0,
        }
    }

    fn join(l: Node, r: Node) -> Node {
        if l.max == f64::NEG_INFINITY {
            return r;
        }
        if r.max == f64::NEG_INFINITY {
            return l;
        }
        Node {
            max: l.max.max(r.max),
            min: l.min.min(r.min),
            fall: l.fall.max(r.fall).max(l.max - r.min),
            rise: l.rise.max(r.rise).max(r.max - l.min),
        }
    }
}

/// Segment tree answering the monotone approximation error of any index
/// range in `O(log n)`. Every candidate gap is a direct difference of two
/// input values, so results match a linear scan exactly.
#[derive(Debug, Clone)]
pub(crate) struct RangeError<'a> {
    values: &'a [f64],
    size: usize,
    nodes: Vec<Node>,
}

impl<'a> RangeError<'a> {
    pub fn new(values: &'a [f64]) -> Self {
        let size = values.len().next_power_of_two().max(1);
        let mut nodes = vec![Node::EMPTY; 2 * size];
        for (i, &v) in values.iter().enumerate() {
            nodes[size + i] = Node::leaf(v);
        }
        for i in (1..size).rev() {
            nodes[i] = Node::join(nodes[2 * i], nodes[2 * i + 1]);
        }
        Self {
            values,
            size,
            nodes,
        }
    }

    fn summary(&self, lo: usize, hi: usize) -> Node {
        let (mut l, mut r) = (lo + self.size, hi + self.size + 1);
        let (mut left, mut right) = (Node::EMPTY, Node::EMPTY);
        while l < r {
            if l & 1 == 1 {
                left = Node::join(left, self.nodes[l]);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                right = Node::join(self.nodes[r], right);
            }
            l >>= 1;
            r >>= 1;
        }
        Node::join(left, right)
    }

    /// Error of the inclusive range `lo..=hi` under its endpoint direction.
    pub fn omafe(&self, lo: usize, hi: usize) -> f64 {
        let s = self.summary(lo, hi);
        let gap = match Direction::from_endpoints(self.values[lo], self.values[hi]) {
            Direction::Increasing => s.fall,
            Direction::Decreasing => s.rise,
            Direction::Flat => s.max - s.min,
        };
        gap / 2.0
    }
}
