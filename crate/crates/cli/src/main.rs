use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use diversity_ga::harness::{
    self, effort_csv, emit_csv, format_sig, parse_config, precompute_oracles, prepare_problem,
    read_runs_csv, run_experiment, summary_row, ExperimentSpec, EFFORT_CONFIDENCE,
    SUMMARY_HEADER,
};
use diversity_ga::metrics::computational_effort;
use diversity_ga::problems::{surface_samples, CacheStatus, OracleCache};
use diversity_ga::{GaConfig, ProblemId};

#[derive(Parser)]
#[command(name = "dga", version, about = "Self-adaptive diversity-control GA experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute and cache shift constants and grid optima.
    Oracle {
        /// Comma-separated problem ids (default: all nine).
        #[arg(long, value_delimiter = ',')]
        problems: Vec<String>,
        #[arg(long, default_value = "oracles.txt")]
        cache: PathBuf,
    },
    /// Run the configured method.
    Run(RunArgs),
    /// Run every baseline mutation rate plus the adaptive method.
    Sweep(RunArgs),
    /// Recompute the computational effort from a stored runs.csv.
    Effort {
        #[arg(long)]
        runs: PathBuf,
        #[arg(long)]
        population_size: usize,
        /// Directory for effort.csv (default: print to stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print sampled objective values over the variable range as CSV.
    Grid {
        #[arg(long)]
        problem: String,
        #[arg(long, default_value_t = 101)]
        resolution: usize,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Worker threads (default: host parallelism).
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory, overriding the config's output_dir.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Oracle cache file (default: <out>/oracles.txt).
    #[arg(long)]
    cache: Option<PathBuf>,
}

type CliResult<T> = Result<T, Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(command: Command) -> CliResult<()> {
    match command {
        Command::Oracle { problems, cache } => oracle(&problems, &cache),
        Command::Run(args) => experiment(&args, false),
        Command::Sweep(args) => experiment(&args, true),
        Command::Effort {
            runs,
            population_size,
            out,
        } => effort(&runs, population_size, out.as_deref()),
        Command::Grid {
            problem,
            resolution,
        } => grid(&problem, resolution),
    }
}

fn oracle(names: &[String], cache: &Path) -> CliResult<()> {
    let ids: Vec<ProblemId> = if names.is_empty() {
        ProblemId::ALL.to_vec()
    } else {
        names.iter().map(|n| n.parse()).collect::<Result<_, _>>()?
    };
    let cache = OracleCache::new(cache);
    for (id, oracle, status) in precompute_oracles(&ids, &cache)? {
        let how = match status {
            CacheStatus::Hit => "cached",
            CacheStatus::Computed => "computed",
        };
        let f_max = oracle.f_max.map_or_else(|| "-".into(), |v| v.to_string());
        println!(
            "{id}: f_max={f_max} optimum_fitness={} witness={} ({how})",
            oracle.optimum_fitness, oracle.witness
        );
    }
    Ok(())
}

fn experiment(args: &RunArgs, sweep: bool) -> CliResult<()> {
    let mut spec: ExperimentSpec = parse_config(&args.config)?;
    if let Some(out) = &args.out {
        spec.output_dir = out.clone();
    }
    let workers = args
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let cache = OracleCache::new(
        args.cache
            .clone()
            .unwrap_or_else(|| spec.output_dir.join("oracles.txt")),
    );
    let problem = prepare_problem(spec.problem, &cache)?;
    let configs: Vec<(String, GaConfig)> = if sweep {
        spec.sweep_configs()
    } else {
        spec.run_configs()
    };
    let nested = configs.len() > 1;
    let mut summary = String::from(SUMMARY_HEADER);
    for (label, cfg) in &configs {
        eprintln!("{}: {label}, {} runs", spec.problem, spec.runs);
        let outcome = run_experiment(label, cfg, &problem, spec.runs, spec.base_seed, workers)?;
        let dir = if nested {
            spec.output_dir.join(label)
        } else {
            spec.output_dir.clone()
        };
        emit_csv(&outcome, &dir)?;
        summary.push_str(&summary_row(&outcome));
    }
    if nested {
        fs::write(spec.output_dir.join("summary.csv"), &summary)?;
    }
    print!("{}", render_table(&summary));
    Ok(())
}

/// Aligns summary CSV columns for the terminal.
fn render_table(csv: &str) -> String {
    let rows: Vec<Vec<&str>> = csv.lines().map(|l| l.split(',').collect()).collect();
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in &rows {
        for (c, cell) in r.iter().enumerate() {
            write!(out, "{cell:>w$}  ", w = widths[c]).unwrap();
        }
        out.push('\n');
    }
    out
}

fn effort(runs: &Path, population_size: usize, out: Option<&Path>) -> CliResult<()> {
    let results = read_runs_csv(runs)?;
    let table = computational_effort(&results, population_size, EFFORT_CONFIDENCE)?;
    let text = effort_csv(table.as_ref());
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            fs::write(dir.join("effort.csv"), text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn grid(problem: &str, resolution: usize) -> CliResult<()> {
    let id: ProblemId = problem.parse()?;
    let samples = surface_samples(id, resolution)?;
    let dims = samples.first().map_or(0, |(p, _)| p.len());
    let header: Vec<String> = (1..=dims).map(|k| format!("x{k}")).collect();
    println!("{},f", header.join(","));
    for (point, value) in samples {
        let coords: Vec<String> = point.into_iter().map(harness::format_sig).collect();
        println!("{},{}", coords.join(","), format_sig(value));
    }
    Ok(())
}
