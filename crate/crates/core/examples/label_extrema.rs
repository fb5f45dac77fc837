// SPDX-License-Identifier: MIT OR Apache-2.0

//! Scale labels of every local extremum.
//!
//! ```text
//! cargo run --example label_extrema
//! ```

use quasimono::labeling::{label_extrema, LabeledExtremum};
use quasimono::series::{dedup_values, find_extrema};

pub fn run_example() -> quasimono::Result<Vec<LabeledExtremum>> {
    // repeated samples collapse before labeling
    let values = [0.0, 10.0, 10.0, 9.0, 10.0, 0.0];
    let pre = dedup_values(&values);
    let extrema = find_extrema(&pre)?;
    let labeled = label_extrema(&pre, &extrema)?;

    println!("{:>5} {:>6} {:>4} {:>6}", "index", "value", "kind", "scale");
    for l in &labeled {
        let index = pre.origin_index()[l.pos];
        println!(
            "{index:>5} {:>6} {:>4} {:>6}",
            values[index],
            l.kind.as_str(),
            l.scale
        );
    }
    Ok(labeled)
}

#[allow(dead_code)]
fn main() -> quasimono::Result<()> {
    run_example().map(|_| ())
}
