// SPDX-License-Identifier: MIT OR Apache-2.0

//! Optimal monotone segmentation of a noisy sawtooth for a few budgets.
//!
//! ```text
//! cargo run --example optimal_segmentation
//! ```

use quasimono::segmentation::{optimal_segmentation, Segmentation};
use quasimono::series::TimeSeries;

pub fn run_example() -> quasimono::Result<Vec<Segmentation>> {
    let ys: Vec<f64> = (0..60)
        .map(|i| {
            let tooth = (i % 20) as f64;
            let wobble = if i % 3 == 0 { 0.8 } else { 0.0 };
            tooth + wobble
        })
        .collect();
    let series = TimeSeries::from_values(ys)?;

    let mut out = Vec::new();
    for k in [1, 3, 6, 12] {
        let seg = optimal_segmentation(&series, k)?;
        println!(
            "K = {k:>2}: {} segments, error {:.3}, breakpoints {:?}",
            seg.segment_count(),
            seg.total_error,
            seg.breakpoints
        );
        out.push(seg);
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> quasimono::Result<()> {
    run_example().map(|_| ())
}
