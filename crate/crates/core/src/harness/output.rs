//! CSV files written by the harness.
//!
//! * `runs.csv`: `run,seed,success,first_success_gen,evaluations`
//! * `trace.csv`: per-generation means over all runs
//! * `effort.csv`: `generation,P,R,I` rows, then
//!   `effort,<value>,i_star,<value>,N,<value>`
//! * `summary.csv`: one row per method
//!
//! Floats carry six significant digits.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::experiment::{AggregateTrace, ExperimentOutcome};
use crate::engine::RunResult;
use crate::error::{Error, Result};
use crate::metrics::EffortTable;

/// `%g`-style formatting with six significant digits.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-4..6).contains(&exp) {
        format!("{}e{}", trim(mantissa), exp)
    } else {
        trim(&format!("{:.*}", (5 - exp) as usize, x))
    }
}

pub fn runs_csv(results: &[RunResult]) -> String {
    let mut out = String::from("run,seed,success,first_success_gen,evaluations\n");
    for (i, r) in results.iter().enumerate() {
        let first = r
            .first_success_generation
            .map_or_else(String::new, |g| g.to_string());
        writeln!(out, "{i},{},{},{first},{}", r.seed, r.success, r.evaluations).unwrap();
    }
    out
}

pub fn trace_csv(trace: &[AggregateTrace]) -> String {
    let k = trace.first().map_or(0, |t| t.usage.len());
    let mut out = String::from("generation,mean_best_fitness,mean_mean_fitness,mean_diversity");
    for t in 0..k {
        write!(out, ",usage_t{t}").unwrap();
    }
    for t in 0..k {
        write!(out, ",contrib_t{t}").unwrap();
    }
    out.push('\n');
    for row in trace {
        write!(
            out,
            "{},{},{},{}",
            row.generation,
            format_sig(row.mean_best_fitness),
            format_sig(row.mean_mean_fitness),
            format_sig(row.mean_diversity)
        )
        .unwrap();
        for v in row.usage.iter().chain(&row.contributions) {
            write!(out, ",{}", format_sig(*v)).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn effort_csv(effort: Option<&EffortTable>) -> String {
    let mut out = String::from("generation,P,R,I\n");
    let opt = |v: Option<u64>| v.map_or_else(String::new, |v| v.to_string());
    match effort {
        Some(t) => {
            for row in &t.rows {
                writeln!(
                    out,
                    "{},{},{},{}",
                    row.generation,
                    format_sig(row.p),
                    opt(row.r),
                    opt(row.i)
                )
                .unwrap();
            }
            writeln!(out, "effort,{},i_star,{},N,{}", t.effort, t.i_star, t.successes).unwrap();
        }
        None => out.push_str("effort,-,i_star,-,N,0\n"),
    }
    out
}

pub const SUMMARY_HEADER: &str = "method,runs,N,gen,i_star,effort,avfe,quotient\n";

pub fn summary_row(o: &ExperimentOutcome) -> String {
    let f = |v: Option<f64>| v.map_or_else(|| "-".to_string(), format_sig);
    let (i_star, effort) = o.effort.as_ref().map_or_else(
        || ("-".to_string(), "-".to_string()),
        |t| (t.i_star.to_string(), t.effort.to_string()),
    );
    format!(
        "{},{},{},{},{i_star},{effort},{},{}\n",
        o.label,
        o.results.len(),
        o.successes(),
        f(o.mean_generation),
        f(o.avfe),
        f(o.quotient)
    )
}

/// Writes `runs.csv`, `trace.csv`, `effort.csv` and `summary.csv` into
/// `dir`, returning the paths written.
pub fn emit_csv(outcome: &ExperimentOutcome, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let files = [
        ("runs.csv", runs_csv(&outcome.results)),
        ("trace.csv", trace_csv(&outcome.trace)),
        ("effort.csv", effort_csv(outcome.effort.as_ref())),
        ("summary.csv", format!("{SUMMARY_HEADER}{}", summary_row(outcome))),
    ];
    files
        .into_iter()
        .map(|(name, body)| {
            let path = dir.join(name);
            fs::write(&path, body)?;
            Ok(path)
        })
        .collect()
}

/// Reads `runs.csv` back into results without traces.
pub fn read_runs_csv(path: &Path) -> Result<Vec<RunResult>> {
    let text = fs::read_to_string(path)?;
    let bad = |line: usize, message: String| Error::Parse {
        what: format!("{}:{line}", path.display()),
        message,
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == "run,seed,success,first_success_gen,evaluations" => {}
        _ => return Err(bad(1, "missing runs.csv header".into())),
    }
    lines
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let n = i + 1;
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 5 {
                return Err(bad(n, format!("expected 5 columns, got {}", cols.len())));
            }
            let num = |s: &str| s.parse::<u64>().map_err(|e| bad(n, format!("`{s}`: {e}")));
            let success = match cols[2] {
                "true" => true,
                "false" => false,
                other => return Err(bad(n, format!("bad success flag `{other}`"))),
            };
            let first = match cols[3] {
                "" => None,
                s => Some(num(s)? as usize),
            };
            if success != first.is_some() {
                return Err(bad(n, "success flag disagrees with first_success_gen".into()));
            }
            Ok(RunResult {
                seed: num(cols[1])?,
                success,
                first_success_generation: first,
                evaluations: num(cols[4])?,
                traces: Vec::new(),
            })
        })
        .collect()
}
