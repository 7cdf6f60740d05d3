//! `key = value` experiment configuration files.
//!
//! ```text
//! # deceptive sweep
//! problem = deceptive
//! method = baseline
//! p_m = 0.00, 0.01, 0.03, 0.05
//! runs = 500
//! ```
//!
//! Unset keys take the standard experimental defaults (population 400, 200
//! generations, 500 runs, tournament size 3, four preference types with
//! `tau_max = 3`, crossover rate 1). Unknown or repeated keys are errors.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use crate::engine::{GaConfig, Method};
use crate::error::{Error, Result};
use crate::problems::ProblemId;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodKind {
    Adaptive,
    Baseline,
}

/// A validated experiment description.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub problem: ProblemId,
    pub method: MethodKind,
    /// Mutation rates for baseline runs and sweeps.
    pub mutation_rates: Vec<f64>,
    /// GA parameters; `ga.method` is filled in per labelled run.
    pub ga: GaConfig,
    pub runs: usize,
    pub base_seed: u64,
    pub output_dir: PathBuf,
}

pub const DEFAULT_MUTATION_RATES: [f64; 4] = [0.0, 0.01, 0.03, 0.05];

const KEYS: [&str; 12] = [
    "problem",
    "method",
    "p_m",
    "population_size",
    "max_generations",
    "runs",
    "base_seed",
    "tau_max",
    "num_preference_types",
    "tournament_size",
    "p_c",
    "output_dir",
];

impl ExperimentSpec {
    /// Defaults for everything but the problem.
    pub fn new(problem: ProblemId) -> Self {
        Self {
            problem,
            method: MethodKind::Adaptive,
            mutation_rates: DEFAULT_MUTATION_RATES.to_vec(),
            ga: GaConfig::default(),
            runs: 500,
            base_seed: 1,
            output_dir: PathBuf::from("out"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs < 1 {
            return Err(Error::InvalidParameter("runs must be at least 1".into()));
        }
        if self.mutation_rates.is_empty() {
            return Err(Error::InvalidParameter("p_m list is empty".into()));
        }
        for &pm in &self.mutation_rates {
            if !(0.0..=1.0).contains(&pm) {
                return Err(Error::InvalidParameter(format!(
                    "p_m {pm} outside [0, 1]"
                )));
            }
        }
        self.ga.validate()?;
        GaConfig {
            method: Method::Adaptive,
            ..self.ga.clone()
        }
        .validate()
    }

    fn with_method(&self, method: Method) -> GaConfig {
        GaConfig {
            method,
            ..self.ga.clone()
        }
    }

    fn baselines(&self) -> Vec<(String, GaConfig)> {
        self.mutation_rates
            .iter()
            .map(|&pm| {
                (
                    baseline_label(pm),
                    self.with_method(Method::Baseline { mutation_rate: pm }),
                )
            })
            .collect()
    }

    /// Labelled configurations for the configured method: one for adaptive,
    /// one per mutation rate for baseline.
    pub fn run_configs(&self) -> Vec<(String, GaConfig)> {
        match self.method {
            MethodKind::Adaptive => vec![("adaptive".into(), self.with_method(Method::Adaptive))],
            MethodKind::Baseline => self.baselines(),
        }
    }

    /// Every baseline mutation rate followed by the adaptive method.
    pub fn sweep_configs(&self) -> Vec<(String, GaConfig)> {
        let mut v = self.baselines();
        v.push(("adaptive".into(), self.with_method(Method::Adaptive)));
        v
    }
}

pub fn baseline_label(mutation_rate: f64) -> String {
    format!("baseline_pm{mutation_rate:.2}")
}

fn parse_value<T: std::str::FromStr>(value: &str) -> std::result::Result<T, String>
where
    T::Err: std::fmt::Display,
{
    value
        .parse::<T>()
        .map_err(|e| format!("cannot parse `{value}`: {e}"))
}

/// Parses and validates a configuration file.
pub fn parse_config(path: &Path) -> Result<ExperimentSpec> {
    let text = fs::read_to_string(path)?;
    parse_config_str(&text, path)
}

/// Parses configuration text; `origin` is only used in error messages.
pub fn parse_config_str(text: &str, origin: &Path) -> Result<ExperimentSpec> {
    let err = |line: usize, message: String| Error::Config {
        path: origin.to_path_buf(),
        line,
        message,
    };
    let mut seen = BTreeSet::new();
    let mut problem = None;
    let mut spec = ExperimentSpec::new(ProblemId::OneMax);

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(line_no, format!("expected `key = value`, got `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(err(line_no, format!("unknown key `{key}`")));
        }
        if !seen.insert(key.to_string()) {
            return Err(err(line_no, format!("duplicate key `{key}`")));
        }
        let at = |m: String| err(line_no, format!("{key}: {m}"));
        match key {
            "problem" => problem = Some(value.parse::<ProblemId>().map_err(|e| at(e.to_string()))?),
            "method" => {
                spec.method = match value {
                    "adaptive" => MethodKind::Adaptive,
                    "baseline" => MethodKind::Baseline,
                    other => return Err(at(format!("expected adaptive or baseline, got `{other}`"))),
                }
            }
            "p_m" => {
                spec.mutation_rates = value
                    .split(',')
                    .map(|v| parse_value::<f64>(v.trim()))
                    .collect::<std::result::Result<_, _>>()
                    .map_err(at)?;
            }
            "population_size" => spec.ga.population_size = parse_value(value).map_err(at)?,
            "max_generations" => spec.ga.max_generations = parse_value(value).map_err(at)?,
            "runs" => spec.runs = parse_value(value).map_err(at)?,
            "base_seed" => spec.base_seed = parse_value(value).map_err(at)?,
            "tau_max" => spec.ga.mating.tau_max = parse_value(value).map_err(at)?,
            "num_preference_types" => {
                spec.ga.num_preference_types = parse_value(value).map_err(at)?
            }
            "tournament_size" => spec.ga.mating.tournament_size = parse_value(value).map_err(at)?,
            "p_c" => spec.ga.crossover_rate = parse_value(value).map_err(at)?,
            "output_dir" => spec.output_dir = PathBuf::from(value),
            _ => unreachable!("key list checked above"),
        }
    }

    spec.problem = problem.ok_or_else(|| err(0, "missing required key `problem`".into()))?;
    spec.validate().map_err(|e| err(0, e.to_string()))?;
    Ok(spec)
}
