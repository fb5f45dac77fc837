// SPDX-License-Identifier: MIT OR Apache-2.0

//! Best l∞ monotone fit of a short sequence, with its envelopes.
//!
//! ```text
//! cargo run --example monotone_fit
//! ```

use quasimono::monotone::{best_monotone_fit, monotone_envelopes, segment_omafe, Direction};

pub fn run_example() -> quasimono::Result<f64> {
    let values = [0.0, 2.0, 1.0, 0.0, 2.0];

    let (upper, lower) = monotone_envelopes(&values, Direction::Increasing)?;
    println!("upper envelope  {upper:?}");
    println!("lower envelope  {lower:?}");

    let fit = best_monotone_fit(&values, Direction::Increasing)?;
    println!("increasing fit  {:?}  error {}", fit.fit, fit.error);

    // the direction implied by the endpoints, and its error in one pass
    let (dir, err) = segment_omafe(&values, 0, values.len() - 1)?;
    println!("endpoint direction {}  error {err}", dir.as_str());
    assert_eq!(err, fit.error);
    Ok(err)
}

#[allow(dead_code)]
fn main() -> quasimono::Result<()> {
    run_example().map(|_| ())
}
