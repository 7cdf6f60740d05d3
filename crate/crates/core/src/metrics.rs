//! Population diversity, computational effort, AVFE and per-generation traces.

use crate::bitstring::BitString;
use crate::engine::RunResult;
use crate::error::{Error, Result};

/// Snapshot of one generation of a run.
#[derive(Clone, Debug, PartialEq)]
pub struct GenerationTrace {
    pub generation: usize,
    pub best_fitness: f64,
    pub mean_fitness: f64,
    pub diversity: f64,
    /// Pairings that used each preference type to produce this generation.
    /// Empty for baseline runs; all zero for generation 0.
    pub type_usage: Vec<u64>,
    /// Contributions in force after producing this generation. Empty for
    /// baseline runs.
    pub contributions: Vec<f64>,
}

/// Mean Hamming distance over all ordered pairs (self-pairs included),
/// normalized by chromosome length. Lies in `[0, 0.5]`.
///
/// Computed per bit position: with `c` ones among `n` individuals the
/// position contributes `2 c (n - c)` to the double sum.
pub fn diversity<'a, I>(population: I) -> Result<f64>
where
    I: IntoIterator<Item = &'a BitString>,
{
    let mut iter = population.into_iter();
    let first = iter.next().ok_or(Error::EmptyPopulation)?;
    let len = first.len();
    let mut ones = vec![0u64; len];
    let mut n = 0u64;
    for bits in std::iter::once(first).chain(iter) {
        if bits.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: bits.len(),
            });
        }
        for (p, b) in bits.iter().enumerate() {
            ones[p] += b as u64;
        }
        n += 1;
    }
    let pair_sum: u64 = ones.iter().map(|&c| 2 * c * (n - c)).sum();
    Ok(pair_sum as f64 / ((n * n) as f64 * len as f64))
}

/// Fraction of runs that succeeded at or before generation `i`.
pub fn success_probability(results: &[RunResult], i: usize) -> f64 {
    if results.is_empty() {
        return 0.0;
    }
    let hits = results
        .iter()
        .filter(|r| r.first_success_generation.is_some_and(|g| g <= i))
        .count();
    hits as f64 / results.len() as f64
}

/// Independent runs needed to see at least one success with confidence `z`:
/// `ceil(log(1 - z) / log(1 - p))`. `None` when `p == 0`.
///
/// The base of the logarithm cancels in the ratio.
pub fn runs_required(p: f64, z: f64) -> Result<Option<u64>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "success probability {p} outside [0, 1]"
        )));
    }
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "confidence {z} outside (0, 1)"
        )));
    }
    if p == 0.0 {
        return Ok(None);
    }
    if p == 1.0 {
        return Ok(Some(1));
    }
    let ratio = (1.0 - z).ln() / (1.0 - p).ln();
    // absorb rounding when the ratio is mathematically an integer
    Ok(Some(((ratio - 1e-9).ceil() as u64).max(1)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EffortRow {
    pub generation: usize,
    pub p: f64,
    /// `None` where `p == 0`.
    pub r: Option<u64>,
    pub i: Option<u64>,
}

/// Per-generation effort figures plus the minimizing generation.
#[derive(Clone, Debug, PartialEq)]
pub struct EffortTable {
    /// Generations `0..=g` where `g` is the latest first-success generation;
    /// beyond it `P` and `R` are constant and `I` only grows.
    pub rows: Vec<EffortRow>,
    pub effort: u64,
    pub i_star: usize,
    pub successes: usize,
    pub runs: usize,
    pub z: f64,
    pub population_size: usize,
}

/// Individuals processed by generation `i` over `r` runs. The `i + 1` counts
/// the initial population, which is evaluated before any reproduction.
pub fn individuals_processed(population_size: usize, i: usize, r: u64) -> u64 {
    population_size as u64 * (i as u64 + 1) * r
}

/// Koza-style computational effort from per-run first-success generations.
/// `None` when no run succeeded.
pub fn effort_from_first_success(
    first_success: &[Option<usize>],
    population_size: usize,
    z: f64,
) -> Result<Option<EffortTable>> {
    let runs = first_success.len();
    let mut gens: Vec<usize> = first_success.iter().flatten().copied().collect();
    let Some(&last) = gens.iter().max() else {
        return Ok(None);
    };
    gens.sort_unstable();
    let mut rows = Vec::with_capacity(last + 1);
    let mut best: Option<(u64, usize)> = None;
    let mut hits = 0;
    for i in 0..=last {
        while hits < gens.len() && gens[hits] <= i {
            hits += 1;
        }
        let p = hits as f64 / runs as f64;
        let r = runs_required(p, z)?;
        let ind = r.map(|r| individuals_processed(population_size, i, r));
        if let Some(v) = ind {
            if best.is_none_or(|(b, _)| v < b) {
                best = Some((v, i));
            }
        }
        rows.push(EffortRow {
            generation: i,
            p,
            r,
            i: ind,
        });
    }
    let (effort, i_star) = best.expect("at least one generation with successes");
    Ok(Some(EffortTable {
        rows,
        effort,
        i_star,
        successes: gens.len(),
        runs,
        z,
        population_size,
    }))
}

pub fn computational_effort(
    results: &[RunResult],
    population_size: usize,
    z: f64,
) -> Result<Option<EffortTable>> {
    let firsts: Vec<Option<usize>> = results.iter().map(|r| r.first_success_generation).collect();
    effort_from_first_success(&firsts, population_size, z)
}

/// Mean fitness evaluations spent by successful runs up to their first
/// success. `None` without successes.
pub fn avfe(results: &[RunResult], population_size: usize) -> Option<f64> {
    let evals: Vec<f64> = results
        .iter()
        .filter_map(|r| r.first_success_generation)
        .map(|g| (population_size * (g + 1)) as f64)
        .collect();
    (!evals.is_empty()).then(|| evals.iter().sum::<f64>() / evals.len() as f64)
}

/// AVFE divided by the success fraction; lower is better.
pub fn performance_quotient(results: &[RunResult], population_size: usize) -> Option<f64> {
    let successes = results.iter().filter(|r| r.success).count();
    let rate = successes as f64 / results.len() as f64;
    avfe(results, population_size).map(|a| a / rate)
}

/// Mean first-success generation over successful runs.
pub fn mean_first_success_generation(results: &[RunResult]) -> Option<f64> {
    let gens: Vec<usize> = results.iter().filter_map(|r| r.first_success_generation).collect();
    (!gens.is_empty()).then(|| gens.iter().sum::<usize>() as f64 / gens.len() as f64)
}
