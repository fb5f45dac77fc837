// SPDX-License-Identifier: MIT OR Apache-2.0

//! Top-down and bottom-up linear segmentation against the optimum.
//!
//! Linear ranges are merged by sign into monotone segments first, and the
//! optimum is taken at the segment count the heuristic ended up with.
//!
//! ```text
//! cargo run --release --example heuristics_comparison
//! ```

use quasimono::generate::random_walk;
use quasimono::heuristics::{aggregate_signs, bottom_up, top_down};
use quasimono::segmentation::optimal_segmentation;
use quasimono::series::TimeSeries;

pub fn run_example() -> quasimono::Result<Vec<(usize, f64, f64, f64)>> {
    let series = TimeSeries::from_values(random_walk(2_000, 7))?;
    let mut rows = Vec::new();
    println!("k,segments_td,omafe_td,segments_bu,omafe_bu,optimal_at_td");
    for k in [5, 10, 20, 40] {
        let td = aggregate_signs(&series, &top_down(&series, k)?)?;
        let bu = aggregate_signs(&series, &bottom_up(&series, k)?)?;
        let opt = optimal_segmentation(&series, td.segment_count())?;
        println!(
            "{k},{},{:.4},{},{:.4},{:.4}",
            td.segment_count(),
            td.total_error,
            bu.segment_count(),
            bu.total_error,
            opt.total_error
        );
        rows.push((k, td.total_error, bu.total_error, opt.total_error));
    }
    Ok(rows)
}

#[allow(dead_code)]
fn main() -> quasimono::Result<()> {
    run_example().map(|_| ())
}
