// SPDX-License-Identifier: MIT OR Apache-2.0

//! The command-line surface driven in-process: generate a walk, then
//! segment it from "standard input".
//!
//! The same thing from a shell:
//!
//! ```text
//! quasimono generate --n 1000 --seed 9 | quasimono segment - --k 8
//! ```

use quasimono::cli::run;

pub fn run_example() -> Result<String, String> {
    let mut walk = Vec::new();
    let code = run(
        ["quasimono", "generate", "--n", "1000", "--seed", "9"],
        &mut std::io::empty(),
        &mut walk,
        &mut std::io::stderr(),
    );
    if code != 0 {
        return Err(format!("generate exited with {code}"));
    }

    let mut report = Vec::new();
    let code = run(
        ["quasimono", "segment", "-", "--k", "8", "--format", "json"],
        &mut walk.as_slice(),
        &mut report,
        &mut std::io::stderr(),
    );
    if code != 0 {
        return Err(format!("segment exited with {code}"));
    }
    let report = String::from_utf8(report).map_err(|e| e.to_string())?;
    print!("{report}");
    Ok(report)
}

#[allow(dead_code)]
fn main() -> Result<(), String> {
    run_example().map(|_| ())
}
