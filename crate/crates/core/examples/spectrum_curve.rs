// SPDX-License-Identifier: MIT OR Apache-2.0

//! Error against segment budget for a random walk, from one index build.
//!
//! Prints `k,omafe` rows ready for plotting.
//!
//! ```text
//! cargo run --release --example spectrum_curve > curve.csv
//! ```

use quasimono::generate::random_walk;
use quasimono::segmentation::SpectrumIndex;
use quasimono::series::TimeSeries;

pub fn run_example() -> quasimono::Result<Vec<(usize, f64)>> {
    let series = TimeSeries::from_values(random_walk(10_000, 42))?;
    let index = SpectrumIndex::from_series(&series)?;
    eprintln!("{} labeled extrema", index.len());

    let curve = index.curve(200);
    println!("k,omafe");
    for (k, e) in &curve {
        println!("{k},{e}");
    }

    // any point on the curve expands to concrete breakpoints
    let (cut, err) = index.query(20)?;
    let seg = index.materialize(&cut)?;
    eprintln!("K = 20: error {err}, {} segments", seg.segment_count());
    Ok(curve)
}

#[allow(dead_code)]
fn main() -> quasimono::Result<()> {
    run_example().map(|_| ())
}
