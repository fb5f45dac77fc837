// SPDX-License-Identifier: MIT OR Apache-2.0

#[allow(dead_code)]
#[path = "../examples/monotone_fit.rs"]
mod monotone_fit;

#[allow(dead_code)]
#[path = "../examples/label_extrema.rs"]
mod label_extrema;

#[allow(dead_code)]
#[path = "../examples/optimal_segmentation.rs"]
mod optimal_segmentation;

#[allow(dead_code)]
#[path = "../examples/spectrum_curve.rs"]
mod spectrum_curve;

#[allow(dead_code)]
#[path = "../examples/heuristics_comparison.rs"]
mod heuristics_comparison;

#[allow(dead_code)]
#[path = "../examples/random_walk_bench.rs"]
mod random_walk_bench;

#[allow(dead_code)]
#[path = "../examples/brute_force_oracle.rs"]
mod brute_force_oracle;

#[allow(dead_code)]
#[path = "../examples/cli_pipeline.rs"]
mod cli_pipeline;

#[test]
fn monotone_fit_runs() {
    assert_eq!(monotone_fit::run_example().unwrap(), 1.0);
}

#[test]
fn label_extrema_runs() {
    let scales: Vec<f64> = label_extrema::run_example()
        .unwrap()
        .iter()
        .map(|l| l.scale)
        .collect();
    assert_eq!(scales, vec![10.0, 1.0, 1.0, 10.0, 10.0]);
}

#[test]
fn optimal_segmentation_runs() {
    let segs = optimal_segmentation::run_example().unwrap();
    let errors: Vec<f64> = segs.iter().map(|s| s.total_error).collect();
    assert!(errors.windows(2).all(|w| w[1] <= w[0]));
    assert!(segs
        .iter()
        .zip([1, 3, 6, 12])
        .all(|(s, k)| s.segment_count() <= k));
}

#[test]
fn spectrum_curve_runs() {
    let curve = spectrum_curve::run_example().unwrap();
    assert_eq!(curve.len(), 200);
    assert!(curve.windows(2).all(|w| w[1].1 <= w[0].1));
}

#[test]
fn heuristics_comparison_runs() {
    for (_, td, _, opt) in heuristics_comparison::run_example().unwrap() {
        assert!(opt <= td + 1e-9);
    }
}

#[test]
fn random_walk_bench_runs() {
    let rows = random_walk_bench::run_example(&[500, 30_000]);
    assert!(rows[0].bottomup_s.is_some());
    assert!(rows[1].bottomup_s.is_none());
}

#[test]
fn brute_force_oracle_runs() {
    assert_eq!(brute_force_oracle::run_example().unwrap(), 2);
}

#[test]
fn cli_pipeline_runs() {
    let report = cli_pipeline::run_example().unwrap();
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["breakpoints"][0], 0);
    assert_eq!(v["breakpoints"].as_array().unwrap().last().unwrap(), 999);
}
