//! Seeded multi-run experiments and their aggregates.

use rayon::prelude::*;

use crate::engine::{run, GaConfig, RunResult};
use crate::error::{Error, Result};
use crate::metrics::{
    avfe, computational_effort, mean_first_success_generation, performance_quotient,
    EffortTable,
};
use crate::problems::{BenchmarkProblem, CacheStatus, Oracle, OracleCache, ProblemId};

/// Confidence used for the computational effort.
pub const EFFORT_CONFIDENCE: f64 = 0.99;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of run `index`: a SplitMix64 output at counter `index`. The mix is a
/// bijection, so seeds are pairwise distinct and adding runs leaves earlier
/// seeds unchanged.
pub fn run_seed(base_seed: u64, index: u64) -> u64 {
    splitmix64(
        base_seed
            .wrapping_add(index.wrapping_mul(GOLDEN_GAMMA))
            .wrapping_add(GOLDEN_GAMMA),
    )
}

/// Per-generation means over all runs holding that generation.
#[derive(Clone, Debug, PartialEq)]
pub struct AggregateTrace {
    pub generation: usize,
    pub mean_best_fitness: f64,
    pub mean_mean_fitness: f64,
    pub mean_diversity: f64,
    pub usage: Vec<f64>,
    pub contributions: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct ExperimentOutcome {
    pub label: String,
    pub config: GaConfig,
    pub results: Vec<RunResult>,
    pub effort: Option<EffortTable>,
    pub avfe: Option<f64>,
    pub quotient: Option<f64>,
    pub mean_generation: Option<f64>,
    pub trace: Vec<AggregateTrace>,
}

impl ExperimentOutcome {
    pub fn successes(&self) -> usize {
        self.results.iter().filter(|r| r.success).count()
    }
}

pub fn aggregate_traces(results: &[RunResult]) -> Vec<AggregateTrace> {
    let generations = results.iter().map(|r| r.traces.len()).max().unwrap_or(0);
    (0..generations)
        .map(|g| {
            let rows: Vec<_> = results.iter().filter_map(|r| r.traces.get(g)).collect();
            let n = rows.len() as f64;
            let mean = |f: &dyn Fn(&crate::metrics::GenerationTrace) -> f64| {
                rows.iter().map(|t| f(t)).sum::<f64>() / n
            };
            let width = rows.first().map_or(0, |t| t.type_usage.len());
            let column_mean = |pick: &dyn Fn(&crate::metrics::GenerationTrace, usize) -> f64| {
                (0..width)
                    .map(|k| rows.iter().map(|t| pick(t, k)).sum::<f64>() / n)
                    .collect()
            };
            AggregateTrace {
                generation: g,
                mean_best_fitness: mean(&|t| t.best_fitness),
                mean_mean_fitness: mean(&|t| t.mean_fitness),
                mean_diversity: mean(&|t| t.diversity),
                usage: column_mean(&|t, k| t.type_usage[k] as f64),
                contributions: column_mean(&|t, k| t.contributions[k]),
            }
        })
        .collect()
}

/// Runs `runs` independent seeded runs on `workers` threads and aggregates
/// them. Results are identical for any worker count.
pub fn run_experiment(
    label: &str,
    cfg: &GaConfig,
    problem: &BenchmarkProblem,
    runs: usize,
    base_seed: u64,
    workers: usize,
) -> Result<ExperimentOutcome> {
    if runs < 1 {
        return Err(Error::InvalidParameter("runs must be at least 1".into()));
    }
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;
    let results: Vec<RunResult> = pool.install(|| {
        (0..runs as u64)
            .into_par_iter()
            .map(|i| run(cfg, problem, run_seed(base_seed, i)))
            .collect::<Result<_>>()
    })?;
    let m = cfg.population_size;
    Ok(ExperimentOutcome {
        label: label.to_string(),
        config: cfg.clone(),
        effort: computational_effort(&results, m, EFFORT_CONFIDENCE)?,
        avfe: avfe(&results, m),
        quotient: performance_quotient(&results, m),
        mean_generation: mean_first_success_generation(&results),
        trace: aggregate_traces(&results),
        results,
    })
}

/// Problem with its oracle installed from (or computed into) `cache`.
pub fn prepare_problem(id: ProblemId, cache: &OracleCache) -> Result<BenchmarkProblem> {
    let mut p = BenchmarkProblem::new(id);
    cache.initialize(&mut p)?;
    Ok(p)
}

/// Ensures the cache holds a record for every id.
pub fn precompute_oracles(
    ids: &[ProblemId],
    cache: &OracleCache,
) -> Result<Vec<(ProblemId, Oracle, CacheStatus)>> {
    ids.iter()
        .map(|&id| {
            let mut p = BenchmarkProblem::new(id);
            let status = cache.initialize(&mut p)?;
            Ok((id, p.oracle().expect("initialized").clone(), status))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Method;
    use std::collections::HashSet;

    #[test]
    fn seeds_are_distinct_and_stable() {
        let seeds: HashSet<u64> = (0..10_000).map(|i| run_seed(7, i)).collect();
        assert_eq!(seeds.len(), 10_000);
        assert_eq!(run_seed(7, 3), run_seed(7, 3));
        assert_ne!(run_seed(7, 3), run_seed(8, 3));
    }

    #[test]
    fn single_run_aggregate_equals_raw() {
        let p = BenchmarkProblem::initialized(ProblemId::OneMax).unwrap();
        let cfg = GaConfig {
            population_size: 20,
            max_generations: 10,
            ..GaConfig::default()
        };
        let out = run_experiment("adaptive", &cfg, &p, 1, 5, 2).unwrap();
        let r = &out.results[0];
        assert_eq!(out.trace.len(), r.traces.len());
        for (a, t) in out.trace.iter().zip(&r.traces) {
            assert_eq!(a.mean_diversity, t.diversity);
            assert_eq!(a.mean_best_fitness, t.best_fitness);
            let usage: Vec<f64> = t.type_usage.iter().map(|&u| u as f64).collect();
            assert_eq!(a.usage, usage);
            assert_eq!(a.contributions, t.contributions);
        }
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let p = BenchmarkProblem::initialized(ProblemId::Deceptive).unwrap();
        let cfg = GaConfig {
            population_size: 30,
            max_generations: 12,
            method: Method::Baseline { mutation_rate: 0.01 },
            ..GaConfig::default()
        };
        let a = run_experiment("b", &cfg, &p, 9, 3, 1).unwrap();
        let b = run_experiment("b", &cfg, &p, 9, 3, 4).unwrap();
        assert_eq!(a.results, b.results);
        assert_eq!(a.trace, b.trace);
    }
}
