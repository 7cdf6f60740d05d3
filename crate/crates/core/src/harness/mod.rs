//! Experiment orchestration: configuration files, seeded multi-run
//! experiments, oracle precomputation and CSV output.

mod config;
mod experiment;
mod output;

pub use config::{
    baseline_label, parse_config, parse_config_str, ExperimentSpec, MethodKind,
    DEFAULT_MUTATION_RATES,
};
pub use experiment::{
    aggregate_traces, precompute_oracles, prepare_problem, run_experiment, run_seed,
    AggregateTrace, ExperimentOutcome, EFFORT_CONFIDENCE,
};
pub use output::{
    effort_csv, emit_csv, format_sig, read_runs_csv, runs_csv, summary_row, trace_csv,
    SUMMARY_HEADER,
};
