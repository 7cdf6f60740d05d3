//! Generational GA loop for the adaptive method and the mutation-rate
//! baseline.
//!
//! Both methods replace the whole population every generation with children
//! produced pairwise by one-point crossover; there is no elitism. The
//! adaptive method draws a preference type per pairing and uses it to pick
//! the partner, and uses no mutation. The baseline picks both parents by
//! plain tournament and mutates children bitwise.
//!
//! A run uses two random streams derived from its seed: one for preference
//! sampling and one for everything else. With a single preference type the
//! adaptive method therefore makes exactly the same mating draws as the
//! baseline without mutation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::controller::{PreferenceState, DEFAULT_SAMPLING_FLOOR};
use crate::error::{Error, Result};
use crate::individual::Individual;
use crate::mating::{select_first_parent, select_partner, MatingParams};
use crate::metrics::{diversity, GenerationTrace};
use crate::problems::BenchmarkProblem;
use crate::bitstring::BitString;

pub type Population = Vec<Individual>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Method {
    /// Preference-type mating with contribution-driven adaptation.
    Adaptive,
    /// Fitness tournaments for both parents plus bitwise mutation.
    Baseline { mutation_rate: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaConfig {
    /// Must be even: each pairing yields two children.
    pub population_size: usize,
    pub max_generations: usize,
    pub method: Method,
    pub crossover_rate: f64,
    pub mating: MatingParams,
    /// Preference types `0..num_preference_types`, adaptive method only.
    pub num_preference_types: usize,
    pub sampling_floor: f64,
    /// Stop at the first successful generation instead of running to
    /// `max_generations`.
    pub early_stop: bool,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 400,
            max_generations: 200,
            method: Method::Adaptive,
            crossover_rate: 1.0,
            mating: MatingParams::default(),
            num_preference_types: 4,
            sampling_floor: DEFAULT_SAMPLING_FLOOR,
            early_stop: false,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.population_size < 2 || !self.population_size.is_multiple_of(2) {
            return bad(format!(
                "population size {} must be a positive even number",
                self.population_size
            ));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return bad(format!("crossover rate {} outside [0, 1]", self.crossover_rate));
        }
        self.mating.validate()?;
        match self.method {
            Method::Baseline { mutation_rate } if !(0.0..=1.0).contains(&mutation_rate) => {
                bad(format!("mutation rate {mutation_rate} outside [0, 1]"))
            }
            Method::Adaptive if self.num_preference_types < 1 => {
                bad("need at least one preference type".into())
            }
            Method::Adaptive if self.num_preference_types - 1 > self.mating.tau_max as usize => {
                bad(format!(
                    "{} preference types exceed tau_max {}",
                    self.num_preference_types, self.mating.tau_max
                ))
            }
            _ => Ok(()),
        }
    }
}

/// Outcome of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub seed: u64,
    pub success: bool,
    /// First generation (0 = initial population) holding an optimal
    /// individual.
    pub first_success_generation: Option<usize>,
    pub evaluations: u64,
    pub traces: Vec<GenerationTrace>,
}

/// Fitness evaluation with a running count.
#[derive(Debug)]
pub struct Evaluator<'a> {
    problem: &'a BenchmarkProblem,
    count: u64,
}

impl<'a> Evaluator<'a> {
    pub fn new(problem: &'a BenchmarkProblem) -> Self {
        Self { problem, count: 0 }
    }

    pub fn evaluate(&mut self, bits: BitString) -> Result<Individual> {
        let fitness = self.problem.fitness(&bits)?;
        self.count += 1;
        Ok(Individual::new(bits, fitness))
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn problem(&self) -> &BenchmarkProblem {
        self.problem
    }
}

pub fn init_population<R: Rng + ?Sized>(
    cfg: &GaConfig,
    eval: &mut Evaluator<'_>,
    rng: &mut R,
) -> Result<Population> {
    let len = eval.problem().length();
    (0..cfg.population_size)
        .map(|_| eval.evaluate(BitString::random(len, rng)?))
        .collect()
}

fn check_population(population: &[Individual], cfg: &GaConfig, eval: &Evaluator<'_>) -> Result<()> {
    if population.len() != cfg.population_size {
        return Err(Error::DimensionMismatch {
            expected: cfg.population_size,
            found: population.len(),
        });
    }
    let len = eval.problem().length();
    if let Some(bad) = population.iter().find(|i| i.bits.len() != len) {
        return Err(Error::DimensionMismatch {
            expected: len,
            found: bad.bits.len(),
        });
    }
    Ok(())
}

/// Children of one pairing and whether crossover actually happened.
fn breed<R: Rng + ?Sized>(
    a: &Individual,
    b: &Individual,
    cfg: &GaConfig,
    mutation_rate: f64,
    eval: &mut Evaluator<'_>,
    rng: &mut R,
) -> Result<(Individual, Individual, bool)> {
    let crossed = cfg.crossover_rate >= 1.0 || rng.gen_bool(cfg.crossover_rate);
    let (c1, c2) = if crossed {
        a.bits.one_point_crossover(&b.bits, rng)?
    } else {
        (a.bits.clone(), b.bits.clone())
    };
    let c1 = c1.mutate(mutation_rate, rng)?;
    let c2 = c2.mutate(mutation_rate, rng)?;
    Ok((eval.evaluate(c1)?, eval.evaluate(c2)?, crossed))
}

/// One adaptive generation. Updates `state` (including `end_generation`)
/// and returns the children together with the per-type pairing counts.
pub fn step_generation_adaptive<R, P>(
    population: &[Individual],
    state: &mut PreferenceState,
    cfg: &GaConfig,
    eval: &mut Evaluator<'_>,
    rng: &mut R,
    preference_rng: &mut P,
) -> Result<(Population, Vec<u64>)>
where
    R: Rng + ?Sized,
    P: Rng + ?Sized,
{
    check_population(population, cfg, eval)?;
    let mut usage = vec![0u64; state.num_types()];
    let mut next = Vec::with_capacity(population.len());
    for _ in 0..population.len() / 2 {
        let tau = state.sample_preference(preference_rng);
        usage[tau as usize] += 1;
        let i1 = select_first_parent(population, &cfg.mating, rng)?;
        let i2 = select_partner(population, i1, tau, &cfg.mating, rng)?;
        let (p1, p2) = (&population[i1], &population[i2]);
        let (c1, c2, crossed) = breed(p1, p2, cfg, 0.0, eval, rng)?;
        if crossed {
            state.record_crossover(tau, (c1.fitness, c2.fitness), (p1.fitness, p2.fitness))?;
        }
        next.push(c1);
        next.push(c2);
    }
    state.end_generation();
    Ok((next, usage))
}

/// One baseline generation: two fitness tournaments per pairing, crossover,
/// then bitwise mutation at `mutation_rate`.
pub fn step_generation_baseline<R: Rng + ?Sized>(
    population: &[Individual],
    cfg: &GaConfig,
    mutation_rate: f64,
    eval: &mut Evaluator<'_>,
    rng: &mut R,
) -> Result<Population> {
    check_population(population, cfg, eval)?;
    let mut next = Vec::with_capacity(population.len());
    for _ in 0..population.len() / 2 {
        let i1 = select_first_parent(population, &cfg.mating, rng)?;
        let i2 = select_first_parent(population, &cfg.mating, rng)?;
        let (c1, c2, _) = breed(&population[i1], &population[i2], cfg, mutation_rate, eval, rng)?;
        next.push(c1);
        next.push(c2);
    }
    Ok(next)
}

/// The two random streams of a run: mating/variation and preference
/// sampling.
pub fn run_streams(seed: u64) -> (ChaCha8Rng, ChaCha8Rng) {
    let mating = ChaCha8Rng::seed_from_u64(seed);
    let mut preference = mating.clone();
    preference.set_stream(1);
    (mating, preference)
}

fn trace(
    generation: usize,
    population: &[Individual],
    type_usage: Vec<u64>,
    contributions: Vec<f64>,
) -> Result<GenerationTrace> {
    let best_fitness = population
        .iter()
        .map(|i| i.fitness)
        .fold(f64::NEG_INFINITY, f64::max);
    let mean_fitness =
        population.iter().map(|i| i.fitness).sum::<f64>() / population.len() as f64;
    Ok(GenerationTrace {
        generation,
        best_fitness,
        mean_fitness,
        diversity: diversity(population.iter().map(|i| &i.bits))?,
        type_usage,
        contributions,
    })
}

/// Runs one seeded GA to `max_generations` (or the first success when
/// `early_stop` is set). The problem's oracle must be initialized.
pub fn run(cfg: &GaConfig, problem: &BenchmarkProblem, seed: u64) -> Result<RunResult> {
    cfg.validate()?;
    if problem.optimum_fitness().is_none() {
        return Err(Error::UninitializedOracle(problem.id().to_string()));
    }
    let (mut rng, mut preference_rng) = run_streams(seed);
    let mut eval = Evaluator::new(problem);
    let mut state = match cfg.method {
        Method::Adaptive => Some(PreferenceState::with_floor(
            cfg.num_preference_types,
            cfg.sampling_floor,
        )?),
        Method::Baseline { .. } => None,
    };

    let mut population = init_population(cfg, &mut eval, &mut rng)?;
    let (usage0, contrib0) = match &state {
        Some(s) => (vec![0; s.num_types()], s.contributions().to_vec()),
        None => (Vec::new(), Vec::new()),
    };
    let mut traces = vec![trace(0, &population, usage0, contrib0)?];
    let mut first_success = None;

    for generation in 0..=cfg.max_generations {
        if generation > 0 {
            population = match (&mut state, cfg.method) {
                (Some(state), _) => {
                    let (next, usage) = step_generation_adaptive(
                        &population,
                        state,
                        cfg,
                        &mut eval,
                        &mut rng,
                        &mut preference_rng,
                    )?;
                    traces.push(trace(
                        generation,
                        &next,
                        usage,
                        state.contributions().to_vec(),
                    )?);
                    next
                }
                (None, Method::Baseline { mutation_rate }) => {
                    let next = step_generation_baseline(
                        &population,
                        cfg,
                        mutation_rate,
                        &mut eval,
                        &mut rng,
                    )?;
                    traces.push(trace(generation, &next, Vec::new(), Vec::new())?);
                    next
                }
                (None, Method::Adaptive) => unreachable!("adaptive runs carry a state"),
            };
        }
        if first_success.is_none() && problem.is_success(traces[generation].best_fitness)? {
            first_success = Some(generation);
            if cfg.early_stop {
                break;
            }
        }
    }

    Ok(RunResult {
        seed,
        success: first_success.is_some(),
        first_success_generation: first_success,
        evaluations: eval.count(),
        traces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::ProblemId;

    fn small(method: Method) -> GaConfig {
        GaConfig {
            population_size: 40,
            max_generations: 15,
            method,
            ..GaConfig::default()
        }
    }

    fn one_max() -> BenchmarkProblem {
        BenchmarkProblem::initialized(ProblemId::OneMax).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(GaConfig::default().validate().is_ok());
        let odd = GaConfig {
            population_size: 401,
            ..GaConfig::default()
        };
        assert!(odd.validate().is_err());
        let bad_pm = small(Method::Baseline { mutation_rate: 1.5 });
        assert!(bad_pm.validate().is_err());
        let too_many_types = GaConfig {
            num_preference_types: 5,
            ..GaConfig::default()
        };
        assert!(too_many_types.validate().is_err());
    }

    #[test]
    fn init_population_shape_and_determinism() {
        let p = one_max();
        let cfg = GaConfig::default();
        let mut eval = Evaluator::new(&p);
        let a = init_population(&cfg, &mut eval, &mut run_streams(3).0).unwrap();
        assert_eq!(eval.count(), 400);
        assert_eq!(a.len(), 400);
        assert!(a.iter().all(|i| i.bits.len() == 45 && (0.0..=45.0).contains(&i.fitness)));
        let b = init_population(&cfg, &mut Evaluator::new(&p), &mut run_streams(3).0).unwrap();
        assert_eq!(a, b);
        let d = diversity(a.iter().map(|i| &i.bits)).unwrap();
        assert!((0.48..=0.5).contains(&d), "{d}");
    }

    #[test]
    fn clone_population_stays_put_and_zeroes_contributions() {
        let p = one_max();
        let cfg = small(Method::Adaptive);
        let x: BitString = "10".repeat(22).chars().chain("1".chars()).collect::<String>().parse().unwrap();
        let ind = Individual::new(x.clone(), p.fitness(&x).unwrap());
        let pop = vec![ind; cfg.population_size];
        let mut state = PreferenceState::new(4).unwrap();
        let (mut rng, mut prng) = run_streams(1);
        let mut eval = Evaluator::new(&p);
        let (next, usage) =
            step_generation_adaptive(&pop, &mut state, &cfg, &mut eval, &mut rng, &mut prng)
                .unwrap();
        assert!(next.iter().all(|i| i.bits == x));
        assert_eq!(usage.iter().sum::<u64>(), 20);
        assert_eq!(eval.count(), 40);
        for (t, &u) in usage.iter().enumerate() {
            if u > 0 {
                assert_eq!(state.contributions()[t], 0.0);
            }
        }
    }

    #[test]
    fn no_crossover_copies_parents() {
        let p = one_max();
        let cfg = GaConfig {
            crossover_rate: 0.0,
            ..small(Method::Adaptive)
        };
        let (mut rng, mut prng) = run_streams(2);
        let mut eval = Evaluator::new(&p);
        let pop = init_population(&cfg, &mut eval, &mut rng).unwrap();
        let mut state = PreferenceState::new(4).unwrap();
        let (next, _) =
            step_generation_adaptive(&pop, &mut state, &cfg, &mut eval, &mut rng, &mut prng)
                .unwrap();
        assert!(next.iter().all(|c| pop.iter().any(|i| i.bits == c.bits)));
        // nothing crossed, so every contribution is carried forward
        assert_eq!(state.contributions(), &[0.25; 4]);
    }

    #[test]
    fn baseline_stasis_and_full_flip() {
        let p = one_max();
        let x: BitString = "0".repeat(45).parse().unwrap();
        let pop = vec![Individual::new(x.clone(), 0.0); 40];
        let mut rng = run_streams(5).0;
        let cfg = small(Method::Baseline { mutation_rate: 0.0 });
        let same = step_generation_baseline(&pop, &cfg, 0.0, &mut Evaluator::new(&p), &mut rng)
            .unwrap();
        assert!(same.iter().all(|i| i.bits == x));
        let flipped =
            step_generation_baseline(&pop, &cfg, 1.0, &mut Evaluator::new(&p), &mut rng).unwrap();
        assert!(flipped.iter().all(|i| i.bits == x.complement() && i.fitness == 45.0));
    }

    #[test]
    fn baseline_without_mutation_matches_single_type_adaptive() {
        let p = BenchmarkProblem::initialized(ProblemId::Deceptive).unwrap();
        let adaptive = GaConfig {
            num_preference_types: 1,
            ..small(Method::Adaptive)
        };
        let baseline = small(Method::Baseline { mutation_rate: 0.0 });
        let (mut rng_a, mut prng) = run_streams(8);
        let mut rng_b = rng_a.clone();
        let mut eval_a = Evaluator::new(&p);
        let mut eval_b = Evaluator::new(&p);
        let mut pop_a = init_population(&adaptive, &mut eval_a, &mut rng_a).unwrap();
        let mut pop_b = init_population(&baseline, &mut eval_b, &mut rng_b).unwrap();
        let mut state = PreferenceState::new(1).unwrap();
        for _ in 0..20 {
            pop_a = step_generation_adaptive(
                &pop_a, &mut state, &adaptive, &mut eval_a, &mut rng_a, &mut prng,
            )
            .unwrap()
            .0;
            pop_b =
                step_generation_baseline(&pop_b, &baseline, 0.0, &mut eval_b, &mut rng_b).unwrap();
            assert_eq!(pop_a, pop_b);
        }
    }

    #[test]
    fn adaptive_never_invents_fixed_bits() {
        let p = BenchmarkProblem::initialized(ProblemId::Deceptive).unwrap();
        let cfg = small(Method::Adaptive);
        let (mut rng, mut prng) = run_streams(4);
        let mut eval = Evaluator::new(&p);
        let mut pop = init_population(&cfg, &mut eval, &mut rng).unwrap();
        // force position 7 to 0 and position 8 to 1 everywhere
        for ind in pop.iter_mut() {
            let mut bits: Vec<bool> = ind.bits.iter().collect();
            bits[7] = false;
            bits[8] = true;
            *ind = eval.evaluate(BitString::from_bools(&bits).unwrap()).unwrap();
        }
        let mut state = PreferenceState::new(4).unwrap();
        for _ in 0..30 {
            pop = step_generation_adaptive(&pop, &mut state, &cfg, &mut eval, &mut rng, &mut prng)
                .unwrap()
                .0;
            assert!(pop.iter().all(|i| !i.bits.get(7) && i.bits.get(8)));
            assert_eq!(pop.len(), cfg.population_size);
        }
    }

    #[test]
    fn step_rejects_wrong_lengths() {
        let p = one_max();
        let cfg = small(Method::Adaptive);
        let pop = vec![Individual::new(BitString::zeros(44).unwrap(), 0.0); 40];
        let mut state = PreferenceState::new(4).unwrap();
        let (mut rng, mut prng) = run_streams(0);
        let err = step_generation_adaptive(
            &pop,
            &mut state,
            &cfg,
            &mut Evaluator::new(&p),
            &mut rng,
            &mut prng,
        );
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
        let short = &pop[..10];
        assert!(step_generation_baseline(short, &cfg, 0.0, &mut Evaluator::new(&p), &mut rng).is_err());
    }

    #[test]
    fn run_bookkeeping() {
        let p = one_max();
        let cfg = small(Method::Adaptive);
        let r = run(&cfg, &p, 17).unwrap();
        assert_eq!(r.traces.len(), cfg.max_generations + 1);
        assert_eq!(r.evaluations, 40 * 16);
        for (g, t) in r.traces.iter().enumerate() {
            assert_eq!(t.generation, g);
            assert!((0.0..=0.5).contains(&t.diversity));
            let expected = if g == 0 { 0 } else { 20 };
            assert_eq!(t.type_usage.iter().sum::<u64>(), expected);
            assert_eq!(t.contributions.len(), 4);
        }
        if let Some(g) = r.first_success_generation {
            assert!(r.success && g <= cfg.max_generations);
            assert!(p.is_success(r.traces[g].best_fitness).unwrap());
        }
        assert_eq!(r, run(&cfg, &p, 17).unwrap());
    }

    #[test]
    fn zero_generations_and_early_stop() {
        let p = one_max();
        let cfg = GaConfig {
            max_generations: 0,
            ..small(Method::Adaptive)
        };
        let r = run(&cfg, &p, 1).unwrap();
        assert_eq!(r.evaluations, 40);
        assert_eq!(r.traces.len(), 1);

        let cfg = GaConfig {
            early_stop: true,
            max_generations: 200,
            population_size: 100,
            ..small(Method::Baseline { mutation_rate: 0.01 })
        };
        let r = run(&cfg, &p, 1).unwrap();
        let g = r.first_success_generation.expect("one-max is easy");
        assert_eq!(r.traces.len(), g + 1);
        assert_eq!(r.evaluations, 100 * (g as u64 + 1));
    }

    #[test]
    fn run_requires_oracle() {
        let p = BenchmarkProblem::new(ProblemId::Sphere);
        assert!(matches!(
            run(&small(Method::Adaptive), &p, 0),
            Err(Error::UninitializedOracle(_))
        ));
    }
}
