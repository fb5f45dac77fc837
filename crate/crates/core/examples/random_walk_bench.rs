// SPDX-License-Identifier: MIT OR Apache-2.0

//! Wall-clock timings on seeded random walks of growing length.
//!
//! ```text
//! cargo run --release --example random_walk_bench
//! ```

use quasimono::cli::{bench, BenchRow};

pub fn run_example(sizes: &[usize]) -> Vec<BenchRow> {
    println!("n,optimal_s,topdown_s,bottomup_s,index_build_s,query_ns");
    sizes
        .iter()
        .map(|&n| {
            let r = bench(n, 20, 1, 20_000);
            let bu = r
                .bottomup_s
                .map_or("skipped".to_string(), |s| format!("{s:.6}"));
            println!(
                "{},{:.6},{:.6},{bu},{:.6},{:.1}",
                r.n, r.optimal_s, r.topdown_s, r.index_build_s, r.query_ns
            );
            r
        })
        .collect()
}

#[allow(dead_code)]
fn main() {
    run_example(&[1_000, 10_000, 100_000]);
}
