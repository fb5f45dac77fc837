// SPDX-License-Identifier: MIT OR Apache-2.0

//! Cross-check against exhaustive search on a small input.
//!
//! ```text
//! cargo run --example brute_force_oracle
//! ```

use quasimono::oracle::{brute_force_omafe, enumerate_pairs, maximal_pairs};
use quasimono::segmentation::optimal_segmentation;
use quasimono::series::TimeSeries;

pub fn run_example() -> quasimono::Result<usize> {
    let values = vec![3.0, 1.0, 3.0, 2.0, 1.0, 2.0, 4.0, 2.0, 4.0, 3.0, 2.0];
    let series = TimeSeries::from_values(values.clone())?;

    for k in 1..=5 {
        let fast = optimal_segmentation(&series, k)?;
        let slow = brute_force_omafe(&values, k)?;
        println!(
            "K = {k}: labels {} {:?}, exhaustive {} {:?}",
            fast.total_error, fast.breakpoints, slow.best_error, slow.best_breakpoints
        );
        assert_eq!(fast.total_error, slow.best_error);
    }

    let pairs = maximal_pairs(&enumerate_pairs(&[1.0, 3.0, 2.0, 4.0])?);
    for p in &pairs {
        println!(
            "maximal pair ({}, {}) scale {} {}",
            p.start,
            p.end,
            p.scale,
            p.direction.as_str()
        );
    }
    Ok(pairs.len())
}

#[allow(dead_code)]
fn main() -> quasimono::Result<()> {
    run_example().map(|_| ())
}
