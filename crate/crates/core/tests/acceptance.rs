// SPDX-License-Identifier: MIT OR Apache-2.0

//! Acceptance checks, one line per criterion. Exits nonzero if any fails.
//!
//! Timing checks compare the host against itself, so they are meaningful
//! only in an optimized build; the workspace test profile enables that.

use std::hint::black_box;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quasimono::cli::{spectrum, Algo};
use quasimono::generate::random_walk;
use quasimono::heuristics::{aggregate_signs, bottom_up, top_down, RangeMoments};
use quasimono::labeling::label_extrema;
use quasimono::monotone::{best_monotone_fit, segmentation_omafe, Direction};
use quasimono::oracle::{brute_force_omafe, oracle_labels};
use quasimono::segmentation::{optimal_segmentation, SpectrumIndex};
use quasimono::series::{dedup_values, find_extrema, TimeSeries};

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn fast_labels(v: &[f64]) -> Vec<(usize, &'static str, f64)> {
    let pre = dedup_values(v);
    let ext = find_extrema(&pre).unwrap();
    label_extrema(&pre, &ext)
        .unwrap()
        .iter()
        .map(|l| (l.pos, l.kind.as_str(), l.scale))
        .collect()
}

fn slow_labels(v: &[f64]) -> Vec<(usize, &'static str, f64)> {
    oracle_labels(v)
        .unwrap()
        .iter()
        .map(|&(p, k, s)| (p, k.as_str(), s))
        .collect()
}

fn scales(v: &[f64]) -> Vec<f64> {
    fast_labels(v).iter().map(|t| t.2).collect()
}

fn worked_example_1() -> Outcome {
    let got = scales(&[1.0, 3.0, 2.0, 4.0]);
    if got == [3.0, 1.0, 1.0, 3.0] {
        Ok(format!("{got:?}"))
    } else {
        Err(format!("labels {got:?}"))
    }
}

fn worked_example_2() -> Outcome {
    let got = scales(&[0.0, 10.0, 9.0, 10.0, 0.0]);
    if got == [10.0, 1.0, 1.0, 10.0, 10.0] {
        Ok(format!("{got:?}"))
    } else {
        Err(format!("labels {got:?}"))
    }
}

/// A random sequence drawn from one of several value distributions.
fn random_values(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    match rng.random_range(0..4) {
        0 => (0..n).map(|_| rng.random_range(0..4) as f64).collect(),
        1 => {
            let top = rng.random_range(2..12);
            (0..n).map(|_| rng.random_range(0..=top) as f64).collect()
        }
        2 => (0..n).map(|_| rng.random::<f64>()).collect(),
        _ => random_walk(n, rng.random()),
    }
}

fn label_equivalence() -> Outcome {
    // Labels depend only on the deduplicated sequence, so every sequence
    // over {0,1,2,3} of length <= 12 is covered by enumerating those
    // without consecutive repeats. Short sequences are also run raw.
    let mut distinct = 0usize;
    for len in 2..=12u32 {
        for code in 0..4 * 3usize.pow(len - 1) {
            let mut v = Vec::with_capacity(len as usize);
            let mut d = code % 4;
            let mut rest = code / 4;
            v.push(d as f64);
            for _ in 1..len {
                d = (d + 1 + rest % 3) % 4;
                rest /= 3;
                v.push(d as f64);
            }
            if fast_labels(&v) != slow_labels(&v) {
                return Err(format!("mismatch on {v:?}"));
            }
            distinct += 1;
        }
    }
    let mut raw = 0usize;
    for len in 1..=9u32 {
        for code in 0..4usize.pow(len) {
            let v: Vec<f64> = (0..len)
                .map(|i| (code / 4usize.pow(i) % 4) as f64)
                .collect();
            if dedup_values(&v).len() < 2 {
                continue;
            }
            if fast_labels(&v) != slow_labels(&v) {
                return Err(format!("mismatch on {v:?}"));
            }
            raw += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x1abe1);
    let mut random = 0usize;
    while random < 10_000 {
        let n = rng.random_range(2..=30);
        let v = random_values(&mut rng, n);
        if dedup_values(&v).len() < 2 {
            continue;
        }
        if fast_labels(&v) != slow_labels(&v) {
            return Err(format!("mismatch on {v:?}"));
        }
        random += 1;
    }
    Ok(format!(
        "{distinct} repeat-free sequences (all of length <= 12), {raw} raw sequences (length <= 9), {random} random"
    ))
}

fn oracle_optimality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0971);
    let mut cases = 0;
    for _ in 0..500 {
        let n = rng.random_range(1..=16);
        let v = random_values(&mut rng, n);
        let series = TimeSeries::from_values(v.clone()).unwrap();
        for k in 1..=5 {
            let fast = optimal_segmentation(&series, k).map_err(|e| e.to_string())?;
            let slow = brute_force_omafe(&v, k).map_err(|e| e.to_string())?;
            if fast.segment_count() > k || (fast.total_error - slow.best_error).abs() > 1e-12 {
                return Err(format!(
                    "{v:?} K={k}: {} at {:?}, exhaustive {} at {:?}",
                    fast.total_error, fast.breakpoints, slow.best_error, slow.best_breakpoints
                ));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (sequence, K) cases"))
}

fn test_series(seed: u64, count: usize, max_len: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(2..=max_len);
            random_values(&mut rng, n)
        })
        .collect()
}

fn spectrum_identity() -> Outcome {
    let mut queries = 0;
    let mut skipped = 0;
    for v in test_series(0x5bec, 1000, 200) {
        if dedup_values(&v).len() < 2 {
            skipped += 1;
            continue;
        }
        let series = TimeSeries::from_values(v.clone()).unwrap();
        let index = SpectrumIndex::from_series(&series).map_err(|e| e.to_string())?;
        for k in 1..=index.len() {
            let (cut, err) = index.query(k).map_err(|e| e.to_string())?;
            let seg = index.materialize(&cut).map_err(|e| e.to_string())?;
            let direct = segmentation_omafe(&v, &seg.breakpoints)
                .map_err(|e| e.to_string())?
                .total;
            if direct != err || seg.segment_count() > k {
                return Err(format!("K={k}: index {err}, direct {direct} on {v:?}"));
            }
            queries += 1;
        }
    }
    Ok(format!(
        "{queries} queries, {skipped} constant series skipped"
    ))
}

fn first_increase(col: &[(usize, f64)]) -> Option<usize> {
    col.windows(2).find(|w| w[1].1 > w[0].1).map(|w| w[1].0)
}

fn monotone_spectrum() -> Outcome {
    let mut checked = 0;
    for v in test_series(0x3070, 1000, 200) {
        let series = TimeSeries::from_values(v).unwrap();
        let col = spectrum(&series, 60, Algo::Optimal).map_err(|e| e.to_string())?;
        if let Some(k) = first_increase(&col) {
            return Err(format!("optimal column rises at K={k}"));
        }
        checked += 1;
    }
    for seed in 0..200u64 {
        let series = TimeSeries::from_values(random_walk(400, seed)).unwrap();
        let opt = spectrum(&series, 40, Algo::Optimal).map_err(|e| e.to_string())?;
        if let Some(k) = first_increase(&opt) {
            return Err(format!("optimal column rises at K={k}, walk seed {seed}"));
        }
        for algo in [Algo::Topdown, Algo::Bottomup] {
            let col = spectrum(&series, 40, algo).map_err(|e| e.to_string())?;
            if let Some(k) = first_increase(&col) {
                return Ok(format!(
                    "{checked} series non-increasing; {algo:?} rises at K={k} on walk n=400 seed {seed} ({} -> {}) while optimal does not",
                    col[k - 2].1,
                    col[k - 1].1
                ));
            }
        }
    }
    Err("no heuristic spike found on seeded walks".into())
}

fn dominance() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    let mut cases = 0;
    for seed in 0..10u64 {
        let series = TimeSeries::from_values(random_walk(4000, seed)).unwrap();
        for k in [5, 10, 20, 40, 80] {
            for (name, lin) in [
                ("top-down", top_down(&series, k)),
                ("bottom-up", bottom_up(&series, k)),
            ] {
                let heur = aggregate_signs(&series, &lin.map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                let opt = optimal_segmentation(&series, heur.segment_count())
                    .map_err(|e| e.to_string())?;
                let slack = opt.total_error - heur.total_error;
                worst = worst.max(slack);
                if slack > 1e-9 {
                    return Err(format!(
                        "seed {seed} K={k} {name}: optimal {} > heuristic {} at {} segments",
                        opt.total_error,
                        heur.total_error,
                        heur.segment_count()
                    ));
                }
                cases += 1;
            }
        }
    }
    Ok(format!(
        "{cases} cases, largest optimal - heuristic {worst:.3e}"
    ))
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

fn segmentation_time(n: usize) -> f64 {
    let series = TimeSeries::from_values(random_walk(n, 17)).unwrap();
    median(
        (0..5)
            .map(|_| {
                let t = Instant::now();
                black_box(optimal_segmentation(black_box(&series), 20).unwrap());
                t.elapsed().as_secs_f64()
            })
            .collect(),
    )
}

fn query_time(n: usize) -> f64 {
    let series = TimeSeries::from_values(random_walk(n, 23)).unwrap();
    let index = SpectrumIndex::from_series(&series).unwrap();
    // each sample is the mean over a sweep of budgets
    median(
        (0..100)
            .map(|_| {
                let t = Instant::now();
                for k in 1..=1000 {
                    black_box(index.query(black_box(k)).unwrap());
                }
                t.elapsed().as_nanos() as f64 / 1000.0
            })
            .collect(),
    )
}

fn linearity() -> Outcome {
    let (t1, t2) = (segmentation_time(100_000), segmentation_time(200_000));
    let seg_ratio = t2 / t1;
    let (q1, q2) = (query_time(10_000), query_time(1_000_000));
    let query_ratio = q1.max(q2) / q1.min(q2);
    let detail = format!(
        "segment 1e5 {:.2} ms, 2e5 {:.2} ms, ratio {seg_ratio:.2}; query 1e4 {q1:.1} ns, 1e6 {q2:.1} ns, ratio {query_ratio:.2}",
        t1 * 1e3,
        t2 * 1e3
    );
    if seg_ratio <= 2.5 && query_ratio <= 3.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn half_adverse_move(v: &[f64], direction: Direction) -> f64 {
    let mut gap = 0.0f64;
    for i in 0..v.len() {
        for j in i..v.len() {
            let d = match direction {
                Direction::Increasing => v[i] - v[j],
                _ => v[j] - v[i],
            };
            gap = gap.max(d);
        }
    }
    gap / 2.0
}

fn envelope_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe4e1);
    for _ in 0..1000 {
        let n = rng.random_range(1..=100);
        let v = random_values(&mut rng, n);
        for d in [Direction::Increasing, Direction::Decreasing] {
            let fit = best_monotone_fit(&v, d).map_err(|e| e.to_string())?;
            let want = half_adverse_move(&v, d);
            if fit.error != want {
                return Err(format!("{d:?}: fit {} vs {want} on {v:?}", fit.error));
            }
        }
    }
    Ok("1000 sequences, both directions".into())
}

fn direct_sse(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    xs.iter()
        .zip(ys)
        .map(|(x, y)| (y - my - slope * (x - mx)).powi(2))
        .sum()
}

fn regression_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e55);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.random_range(20..=400);
        let mut x = rng.random_range(-1e4..1e4);
        let mut xs = Vec::with_capacity(n);
        for _ in 0..n {
            x += rng.random_range(0.01..3.0);
            xs.push(x);
        }
        let level = rng.random_range(-1e4..1e4);
        let ys: Vec<f64> = xs
            .iter()
            .map(|_| level + rng.random_range(-100.0..100.0))
            .collect();
        let series = TimeSeries::new(xs.clone(), ys.clone()).unwrap();
        let moments = RangeMoments::build(&series);
        for _ in 0..10 {
            let p = rng.random_range(0..n - 2);
            let q = rng.random_range(p + 2..n);
            let fast = moments.regression_error(p, q).map_err(|e| e.to_string())?;
            let slow = direct_sse(&xs[p..=q], &ys[p..=q]);
            let rel = (fast - slow).abs() / slow;
            worst = worst.max(rel);
            if rel > 1e-6 {
                return Err(format!("range [{p}, {q}]: moments {fast}, direct {slow}"));
            }
        }
    }
    Ok(format!("1000 ranges, worst relative error {worst:.2e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 10] = [
        ("worked example 1", worked_example_1),
        ("worked example 2", worked_example_2),
        ("oracle label equivalence", label_equivalence),
        ("oracle optimality", oracle_optimality),
        ("spectrum identity", spectrum_identity),
        ("monotone spectrum", monotone_spectrum),
        ("dominance", dominance),
        ("linearity", linearity),
        ("envelope identity", envelope_identity),
        ("regression oracle", regression_oracle),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let took = fmt_duration(start.elapsed());
        match outcome {
            Ok(detail) => println!("PASS {name} [{took}]: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL {name} [{took}]: {reason}");
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn fmt_duration(d: Duration) -> String {
    if d < Duration::from_secs(1) {
        format!("{:.1} ms", d.as_secs_f64() * 1e3)
    } else {
        format!("{:.2} s", d.as_secs_f64())
    }
}
