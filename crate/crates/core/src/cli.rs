// SPDX-License-Identifier: MIT OR Apache-2.0

//! Command-line front end. [`run`] takes its streams as arguments so the
//! whole surface can be driven in-process.
//!
//! Exit codes: 0 on success, 1 on I/O failure, 2 on unparsable arguments or
//! input, 3 on an invalid segment budget.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::hint::black_box;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::generate::{generate, random_walk, GeneratorKind};
use crate::heuristics::{aggregate_signs, bottom_up, top_down};
use crate::labeling::label_extrema;
use crate::segmentation::{optimal_segmentation, Segmentation, SpectrumIndex};
use crate::series::{dedup_values, find_extrema, parse_csv, TimeSeries};

pub const EXIT_IO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "quasimono",
    version,
    about = "Monotone segmentation of time series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scale label of every extremum.
    Label {
        #[command(flatten)]
        input: Input,
    },
    /// Segment with a budget of K monotone pieces.
    Segment {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, value_enum, default_value_t = Algo::Optimal)]
        algo: Algo,
    },
    /// Error as a function of the budget, for K = 1..=max-k.
    Spectrum {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_negative_numbers = true)]
        max_k: i64,
        #[arg(long, value_enum, default_value_t = Algo::Optimal)]
        algo: Algo,
    },
    /// Write a synthetic series.
    Generate {
        #[arg(long, default_value_t = GeneratorKind::RandomWalk)]
        kind: GeneratorKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Time every algorithm on seeded random walks.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 20, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20_000)]
        bottomup_ceiling: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct Input {
    /// CSV file of `y` or `x,y` rows, or `-` for standard input.
    pub path: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Optimal,
    Topdown,
    Bottomup,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidBudget(_) | Error::BudgetOutOfRange { .. } => EXIT_BUDGET,
            _ => EXIT_PARSE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_IO,
        message: e.to_string(),
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_PARSE } else { 0 };
        }
    };
    let mut warn = |msg: &str| {
        let _ = writeln!(stderr, "warning: {msg}");
    };
    let out = match execute(cli.command, stdin, &mut warn) {
        Ok(out) => out,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            return f.code;
        }
    };
    match stdout
        .write_all(out.as_bytes())
        .and_then(|_| stdout.flush())
    {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_IO
        }
    }
}

fn budget(k: i64) -> Result<usize, Failure> {
    usize::try_from(k).ok().filter(|&k| k >= 1).ok_or(Failure {
        code: EXIT_BUDGET,
        message: format!("segment budget must be at least 1, got {k}"),
    })
}

fn read_series(path: &PathBuf, stdin: &mut dyn Read) -> Result<TimeSeries, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(io_failure)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure {
            code: EXIT_IO,
            message: format!("{}: {e}", path.display()),
        })?
    };
    let series = parse_csv(&text)?;
    if series.is_empty() {
        return Err(Error::EmptySeries.into());
    }
    Ok(series)
}

fn execute(
    command: Command,
    stdin: &mut dyn Read,
    warn: &mut dyn FnMut(&str),
) -> Result<String, Failure> {
    match command {
        Command::Label { input } => {
            let series = read_series(&input.path, stdin)?;
            Ok(label(&series, input.format, warn)?)
        }
        Command::Segment { input, k, algo } => {
            let k = budget(k)?;
            let series = read_series(&input.path, stdin)?;
            let (seg, ranges) = segment(&series, k, algo)?;
            Ok(render_segment(&seg, ranges, k, algo, input.format))
        }
        Command::Spectrum { input, max_k, algo } => {
            let max_k = budget(max_k)?;
            let series = read_series(&input.path, stdin)?;
            let rows = spectrum(&series, max_k, algo)?;
            Ok(render_spectrum(&rows, algo, input.format))
        }
        Command::Generate {
            kind,
            n,
            seed,
            format,
        } => {
            if n < 1 {
                return Err(Failure {
                    code: EXIT_PARSE,
                    message: "--n must be at least 1".into(),
                });
            }
            let values = generate(kind, n, seed);
            Ok(match format {
                Format::Csv => values.iter().fold(String::new(), |mut s, v| {
                    let _ = writeln!(s, "{v}");
                    s
                }),
                Format::Json => json_line(json!({
                    "command": "generate",
                    "kind": kind.to_string(),
                    "n": n,
                    "seed": seed,
                    "values": values,
                })),
            })
        }
        Command::Bench {
            sizes,
            k,
            seed,
            bottomup_ceiling,
            format,
        } => {
            let k = budget(k)?;
            let rows: Vec<BenchRow> = sizes
                .iter()
                .map(|&n| {
                    let row = bench(n, k, seed, bottomup_ceiling);
                    if row.bottomup_s.is_none() {
                        warn(&format!(
                            "bottom-up skipped at n = {n} (ceiling {bottomup_ceiling})"
                        ));
                    }
                    row
                })
                .collect();
            Ok(render_bench(&rows, k, format))
        }
    }
}

fn json_line(v: serde_json::Value) -> String {
    let mut s = v.to_string();
    s.push('\n');
    s
}

fn label(series: &TimeSeries, format: Format, warn: &mut dyn FnMut(&str)) -> Result<String, Error> {
    let pre = dedup_values(series.ys());
    let labeled = if pre.len() < 2 {
        warn("degenerate series: no extrema to label");
        Vec::new()
    } else {
        label_extrema(&pre, &find_extrema(&pre)?)?
    };
    let rows: Vec<_> = labeled
        .iter()
        .map(|l| {
            // report the original index of the first sample in the run
            let index = pre.origin_index()[l.pos];
            (index, series.ys()[index], l.kind.as_str(), l.scale)
        })
        .collect();
    Ok(match format {
        Format::Csv => {
            let mut s = String::from("index,value,kind,scale\n");
            for (i, v, kind, scale) in &rows {
                let _ = writeln!(s, "{i},{v},{kind},{scale}");
            }
            s
        }
        Format::Json => json_line(json!({
            "command": "label",
            "rows": rows.iter().map(|(i, v, kind, scale)| json!({
                "index": i, "value": v, "kind": kind, "scale": scale,
            })).collect::<Vec<_>>(),
        })),
    })
}

/// Segmentation for one budget. Heuristics also return the number of
/// linear ranges before sign aggregation.
pub fn segment(
    series: &TimeSeries,
    k: usize,
    algo: Algo,
) -> Result<(Segmentation, Option<usize>), Error> {
    match algo {
        Algo::Optimal => Ok((optimal_segmentation(series, k)?, None)),
        Algo::Topdown => {
            let lin = top_down(series, k)?;
            Ok((aggregate_signs(series, &lin)?, Some(lin.len())))
        }
        Algo::Bottomup => {
            let lin = bottom_up(series, k)?;
            Ok((aggregate_signs(series, &lin)?, Some(lin.len())))
        }
    }
}

/// `(k, omafe)` for `k = 1..=max_k`. The optimal column comes from a single
/// index build; heuristics are rerun for every budget.
pub fn spectrum(series: &TimeSeries, max_k: usize, algo: Algo) -> Result<Vec<(usize, f64)>, Error> {
    if max_k < 1 {
        return Err(Error::InvalidBudget(max_k));
    }
    if algo == Algo::Optimal {
        if dedup_values(series.ys()).len() < 2 {
            return Ok((1..=max_k).map(|k| (k, 0.0)).collect());
        }
        return Ok(SpectrumIndex::from_series(series)?.curve(max_k));
    }
    (1..=max_k)
        .map(|k| Ok((k, segment(series, k, algo)?.0.total_error)))
        .collect()
}

fn render_segment(
    seg: &Segmentation,
    ranges: Option<usize>,
    k: usize,
    algo: Algo,
    format: Format,
) -> String {
    match format {
        Format::Csv => {
            let mut s = String::from("breakpoint\n");
            for b in &seg.breakpoints {
                let _ = writeln!(s, "{b}");
            }
            s.push_str("\nstart,end,direction,omafe\n");
            for ((a, b), (d, e)) in seg
                .segments()
                .zip(seg.directions.iter().zip(&seg.per_segment_error))
            {
                let _ = writeln!(s, "{a},{b},{},{e}", d.as_str());
            }
            let _ = write!(s, "\ntotal_omafe\n{}\n", seg.total_error);
            if let Some(r) = ranges {
                let _ = write!(s, "\nlinear_ranges\n{r}\n");
            }
            s
        }
        Format::Json => json_line(json!({
            "command": "segment",
            "algo": algo,
            "k": k,
            "breakpoints": seg.breakpoints,
            "segments": seg.segments()
                .zip(seg.directions.iter().zip(&seg.per_segment_error))
                .map(|((a, b), (d, e))| json!({"start": a, "end": b, "direction": d, "omafe": e}))
                .collect::<Vec<_>>(),
            "total_omafe": seg.total_error,
            "linear_ranges": ranges,
        })),
    }
}

fn render_spectrum(rows: &[(usize, f64)], algo: Algo, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = String::from("k,omafe\n");
            for (k, e) in rows {
                let _ = writeln!(s, "{k},{e}");
            }
            s
        }
        Format::Json => json_line(json!({
            "command": "spectrum",
            "algo": algo,
            "rows": rows.iter().map(|(k, e)| json!({"k": k, "omafe": e})).collect::<Vec<_>>(),
        })),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub optimal_s: f64,
    pub topdown_s: f64,
    pub bottomup_s: Option<f64>,
    pub index_build_s: f64,
    pub query_ns: f64,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = black_box(f());
    (out, t.elapsed())
}

/// Mean wall time of one budget query, over repeated sweeps of
/// `k = 1..=1000` lasting at least a few milliseconds in total.
pub fn mean_query_ns(index: &SpectrumIndex) -> f64 {
    let mut queries = 0u64;
    let start = Instant::now();
    while queries == 0 || start.elapsed() < Duration::from_millis(5) {
        for k in 1..=1000 {
            black_box(index.query(black_box(k)).ok());
        }
        queries += 1000;
    }
    start.elapsed().as_nanos() as f64 / queries as f64
}

/// Times every algorithm once on a random walk of length `n`.
pub fn bench(n: usize, k: usize, seed: u64, bottomup_ceiling: usize) -> BenchRow {
    let series = TimeSeries::from_values(random_walk(n.max(2), seed)).expect("finite walk");
    let (_, optimal) = timed(|| optimal_segmentation(&series, k));
    let (_, topdown) = timed(|| top_down(&series, k).and_then(|l| aggregate_signs(&series, &l)));
    let bottomup = (n <= bottomup_ceiling)
        .then(|| timed(|| bottom_up(&series, k).and_then(|l| aggregate_signs(&series, &l))).1);
    let (index, build) = timed(|| SpectrumIndex::from_series(&series));
    let query_ns = index.as_ref().map_or(0.0, mean_query_ns);
    BenchRow {
        n,
        optimal_s: optimal.as_secs_f64(),
        topdown_s: topdown.as_secs_f64(),
        bottomup_s: bottomup.map(|d| d.as_secs_f64()),
        index_build_s: build.as_secs_f64(),
        query_ns,
    }
}

fn render_bench(rows: &[BenchRow], k: usize, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = String::from("n,optimal_s,topdown_s,bottomup_s,index_build_s,query_ns\n");
            for r in rows {
                let bu = r.bottomup_s.map(|b| b.to_string()).unwrap_or_default();
                let _ = writeln!(
                    s,
                    "{},{},{},{bu},{},{}",
                    r.n, r.optimal_s, r.topdown_s, r.index_build_s, r.query_ns
                );
            }
            s
        }
        Format::Json => json_line(json!({"command": "bench", "k": k, "rows": rows})),
    }
}
