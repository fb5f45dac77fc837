// SPDX-License-Identifier: MIT OR Apache-2.0

//! Seeded synthetic series.
//!
//! The uniform stream is ChaCha8 seeded through `seed_from_u64`, and
//! normal deviates come from the ziggurat sampler behind
//! `rand_distr::StandardNormal`. Both are fixed algorithms, so a seed gives
//! the same series on every platform.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GeneratorKind {
    #[default]
    RandomWalk,
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "random-walk" => Ok(Self::RandomWalk),
            other => Err(Error::UnknownKind(other.to_string())),
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("random-walk")
    }
}

/// `y[0] = 0`, `y[i + 1] = y[i] + e` with `e ~ N(0, 1)`.
pub fn random_walk(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut y = 0.0;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 {
            let step: f64 = rng.sample(StandardNormal);
            y += step;
        }
        out.push(y);
    }
    out
}

pub fn generate(kind: GeneratorKind, n: usize, seed: u64) -> Vec<f64> {
    match kind {
        GeneratorKind::RandomWalk => random_walk(n, seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_sample_is_zero() {
        assert_eq!(random_walk(1, 9), vec![0.0]);
        assert!(random_walk(0, 9).is_empty());
    }

    #[test]
    fn deterministic() {
        assert_eq!(random_walk(4000, 42), random_walk(4000, 42));
        assert_ne!(random_walk(50, 1), random_walk(50, 2));
        // a longer walk extends a shorter one
        assert_eq!(&random_walk(500, 7)[..100], &random_walk(100, 7)[..]);
    }

    #[test]
    fn steps_look_standard_normal() {
        let y = random_walk(100_001, 3);
        let steps: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();
        let n = steps.len() as f64;
        let mean = steps.iter().sum::<f64>() / n;
        let var = steps.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / n;
        assert!(mean.abs() < 0.02, "{mean}");
        assert!((var - 1.0).abs() < 0.03, "{var}");
    }

    #[test]
    fn kind_names() {
        assert_eq!("random-walk".parse(), Ok(GeneratorKind::RandomWalk));
        assert_eq!(
            "brownian".parse::<GeneratorKind>(),
            Err(Error::UnknownKind("brownian".into()))
        );
        assert_eq!(GeneratorKind::RandomWalk.to_string(), "random-walk");
    }
}
