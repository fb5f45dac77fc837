// SPDX-License-Identifier: MIT OR Apache-2.0

//! Monotone segmentation of time series by scale-labeled extrema.
//!
//! Every local extremum gets a scale label in linear time. The labels pick
//! out optimal segmentations into at most `K` alternating monotone pieces
//! under the l∞ error of the best monotone fit to each piece, and a sorted
//! index answers the error for any `K` in constant time. Top-down and
//! bottom-up piecewise-linear heuristics are included for comparison.
//!
//! ```
//! use quasimono::segmentation::optimal_segmentation;
//! use quasimono::series::TimeSeries;
//!
//! let ts = TimeSeries::from_values(vec![0.0, 10.0, 9.0, 10.0, 0.0])?;
//! let seg = optimal_segmentation(&ts, 2)?;
//! assert_eq!(seg.breakpoints, vec![0, 3, 4]);
//! assert_eq!(seg.total_error, 0.5);
//! # Ok::<(), quasimono::error::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod generate;
pub mod heuristics;
pub mod labeling;
pub mod monotone;
pub mod oracle;
mod range_error;
pub mod segmentation;
pub mod series;

pub use error::{Error, Result};
