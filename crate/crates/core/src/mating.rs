//! Preference-type-aware mate selection.
//!
//! The first parent wins a plain fitness tournament. Its partner wins a
//! tournament scored by `fitness * D(tau, d)`, where `d` is the normalized
//! Hamming distance to the first parent and `D` is the difference function.
//! With `tau = 0` the weight is a constant one half and the partner tournament
//! degenerates to a fitness tournament; with `tau = tau_max` the weight is `d`
//! itself and distant partners are favoured.

use rand::Rng;

use crate::error::{Error, Result};
use crate::individual::Individual;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatingParams {
    /// Largest preference type; types range over `0..=tau_max`.
    pub tau_max: u32,
    pub tournament_size: usize,
}

impl MatingParams {
    pub fn new(tau_max: u32, tournament_size: usize) -> Result<Self> {
        let p = Self {
            tau_max,
            tournament_size,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.tau_max < 1 {
            return Err(Error::InvalidParameter("tau_max must be at least 1".into()));
        }
        if self.tournament_size < 1 {
            return Err(Error::InvalidParameter(
                "tournament size must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

impl Default for MatingParams {
    fn default() -> Self {
        Self {
            tau_max: 3,
            tournament_size: 3,
        }
    }
}

/// `D(tau, d) = 0.5 + (tau / tau_max) * (d - 0.5)`.
pub fn difference_function(tau: u32, d: f64, tau_max: u32) -> Result<f64> {
    if tau_max == 0 || tau > tau_max {
        return Err(Error::InvalidParameter(format!(
            "preference type {tau} outside 0..={tau_max}"
        )));
    }
    if !(0.0..=1.0).contains(&d) {
        return Err(Error::InvalidParameter(format!(
            "difference {d} outside [0, 1]"
        )));
    }
    Ok(0.5 + (tau as f64 / tau_max as f64) * (d - 0.5))
}

fn draw_candidates<R: Rng + ?Sized>(n: usize, size: usize, rng: &mut R) -> Vec<usize> {
    (0..size).map(|_| rng.gen_range(0..n)).collect()
}

/// Slots (positions in `scores`) holding the maximal score.
pub fn best_slots(scores: &[f64]) -> Vec<usize> {
    let best = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    scores
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == best)
        .map(|(i, _)| i)
        .collect()
}

/// Winner among drawn `candidates`, ties broken uniformly at random. A
/// random number is consumed only when there is a tie.
fn pick<R: Rng + ?Sized>(candidates: &[usize], scores: &[f64], rng: &mut R) -> usize {
    let best = best_slots(scores);
    let slot = if best.len() == 1 {
        best[0]
    } else {
        best[rng.gen_range(0..best.len())]
    };
    candidates[slot]
}

/// Plain fitness tournament over `tournament_size` draws with replacement.
pub fn select_first_parent<R: Rng + ?Sized>(
    population: &[Individual],
    params: &MatingParams,
    rng: &mut R,
) -> Result<usize> {
    if population.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    let candidates = draw_candidates(population.len(), params.tournament_size, rng);
    let scores: Vec<f64> = candidates.iter().map(|&i| population[i].fitness).collect();
    Ok(pick(&candidates, &scores, rng))
}

/// Partner scores `f(y) * D(tau, d(y, first))` for the given candidates.
pub fn partner_scores(
    population: &[Individual],
    first: usize,
    candidates: &[usize],
    tau: u32,
    tau_max: u32,
) -> Result<Vec<f64>> {
    let x = &population[first].bits;
    candidates
        .iter()
        .map(|&i| {
            let y = &population[i];
            debug_assert!(y.fitness >= 0.0, "partner scoring needs non-negative fitness");
            let d = y.bits.normalized_difference(x)?;
            Ok(y.fitness * difference_function(tau, d, tau_max)?)
        })
        .collect()
}

/// Tournament for the partner of `population[first]` under preference `tau`.
///
/// Candidates are drawn with replacement from the whole population, the
/// first parent included.
pub fn select_partner<R: Rng + ?Sized>(
    population: &[Individual],
    first: usize,
    tau: u32,
    params: &MatingParams,
    rng: &mut R,
) -> Result<usize> {
    if population.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    if first >= population.len() {
        return Err(Error::InvalidParameter(format!(
            "first parent index {first} outside population of {}",
            population.len()
        )));
    }
    if tau > params.tau_max {
        return Err(Error::InvalidParameter(format!(
            "preference type {tau} outside 0..={}",
            params.tau_max
        )));
    }
    let candidates = draw_candidates(population.len(), params.tournament_size, rng);
    let scores = partner_scores(population, first, &candidates, tau, params.tau_max)?;
    Ok(pick(&candidates, &scores, rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitstring::BitString;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ind(bits: &str, fitness: f64) -> Individual {
        Individual::new(bits.parse().unwrap(), fitness)
    }

    #[test]
    fn difference_function_values() {
        assert_eq!(difference_function(0, 0.7, 3).unwrap(), 0.5);
        assert_eq!(difference_function(3, 0.9, 3).unwrap(), 0.9);
        let v = difference_function(2, 0.25, 3).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn difference_function_rejects_bad_input() {
        assert!(difference_function(4, 0.5, 3).is_err());
        assert!(difference_function(1, 1.1, 3).is_err());
        assert!(difference_function(1, -0.1, 3).is_err());
        assert!(difference_function(0, 0.5, 0).is_err());
    }

    #[test]
    fn difference_function_bounds_and_monotonicity() {
        let tau_max = 3;
        for tau in 0..=tau_max {
            let mut prev = f64::NEG_INFINITY;
            for k in 0..=100 {
                let d = k as f64 / 100.0;
                let v = difference_function(tau, d, tau_max).unwrap();
                assert!((0.0..=1.0).contains(&v));
                let half = tau as f64 / (2.0 * tau_max as f64);
                assert!(v >= 0.5 - half - 1e-15 && v <= 0.5 + half + 1e-15);
                if tau == 0 {
                    assert_eq!(v, 0.5);
                } else {
                    assert!(v > prev);
                }
                prev = v;
            }
        }
    }

    #[test]
    fn params_validation() {
        assert!(MatingParams::new(0, 3).is_err());
        assert!(MatingParams::new(3, 0).is_err());
        assert_eq!(MatingParams::default(), MatingParams::new(3, 3).unwrap());
    }

    #[test]
    fn first_parent_is_tournament_argmax() {
        let pop = vec![ind("00", 3.0), ind("01", 7.0), ind("10", 5.0)];
        assert_eq!(pick(&[0, 1, 2], &[3.0, 7.0, 5.0], &mut ChaCha8Rng::seed_from_u64(0)), 1);
        // With a large tournament every index is almost surely drawn.
        let params = MatingParams::new(3, 64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            assert_eq!(select_first_parent(&pop, &params, &mut rng).unwrap(), 1);
        }
    }

    #[test]
    fn ties_are_broken_uniformly() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut counts = [0usize; 3];
        let trials = 30_000;
        for _ in 0..trials {
            counts[pick(&[0, 1, 2], &[4.0, 4.0, 4.0], &mut rng)] += 1;
        }
        for c in counts {
            let share = c as f64 / trials as f64;
            assert!((share - 1.0 / 3.0).abs() < 0.015, "{share}");
        }
    }

    #[test]
    fn unit_tournament_is_uniform() {
        let pop: Vec<Individual> = (0..4)
            .map(|k| ind(&format!("{:02b}", k), k as f64))
            .collect();
        let params = MatingParams::new(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut counts = [0usize; 4];
        let trials = 40_000;
        for _ in 0..trials {
            counts[select_first_parent(&pop, &params, &mut rng).unwrap()] += 1;
        }
        for c in counts {
            assert!((c as f64 / trials as f64 - 0.25).abs() < 0.015);
        }
    }

    #[test]
    fn empty_population_is_rejected() {
        let params = MatingParams::default();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            select_first_parent(&[], &params, &mut rng),
            Err(Error::EmptyPopulation)
        ));
        assert!(matches!(
            select_partner(&[], 0, 0, &params, &mut rng),
            Err(Error::EmptyPopulation)
        ));
    }

    #[test]
    fn diversity_preference_overrides_fitness() {
        // d(y1, x) = 0.5, d(y2, x) = 1.0
        let pop = vec![ind("0000", 1.0), ind("0011", 2.0), ind("1111", 1.5)];
        let scores = partner_scores(&pop, 0, &[1, 2], 3, 3).unwrap();
        assert_eq!(scores, vec![1.0, 1.5]);
        assert_eq!(best_slots(&scores), vec![1]);

        let scores = partner_scores(&pop, 0, &[1, 2], 0, 3).unwrap();
        assert_eq!(scores, vec![1.0, 0.75]);
        assert_eq!(best_slots(&scores), vec![0]);
    }

    #[test]
    fn single_candidate_wins() {
        let pop = vec![ind("0101", 2.0)];
        let params = MatingParams::default();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for tau in 0..=3 {
            assert_eq!(select_partner(&pop, 0, tau, &params, &mut rng).unwrap(), 0);
        }
        assert!(select_partner(&pop, 0, 4, &params, &mut rng).is_err());
    }

    #[test]
    fn zero_preference_partner_matches_fitness_tournament() {
        let pop: Vec<Individual> = (0..6)
            .map(|k| ind(&format!("{:03b}", k), (k * k) as f64))
            .collect();
        let params = MatingParams::default();
        for seed in 0..200 {
            let mut a = ChaCha8Rng::seed_from_u64(seed);
            let mut b = ChaCha8Rng::seed_from_u64(seed);
            assert_eq!(
                select_first_parent(&pop, &params, &mut a).unwrap(),
                select_partner(&pop, 0, 0, &params, &mut b).unwrap()
            );
        }
    }

    fn population(len: usize, size: usize) -> impl Strategy<Value = Vec<Individual>> {
        prop::collection::vec(
            (prop::collection::vec(any::<bool>(), len), 0.0f64..100.0),
            size,
        )
        .prop_map(|v| {
            v.into_iter()
                .map(|(b, f)| Individual::new(BitString::from_bools(&b).unwrap(), f))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn zero_preference_argmax_equals_fitness_argmax(
            pop in population(16, 8),
            candidates in prop::collection::vec(0usize..8, 3),
        ) {
            let fit: Vec<f64> = candidates.iter().map(|&i| pop[i].fitness).collect();
            let scores = partner_scores(&pop, 0, &candidates, 0, 3).unwrap();
            prop_assert_eq!(best_slots(&fit), best_slots(&scores));
        }

        #[test]
        fn raising_preference_favours_the_distant_candidate(
            pop in population(16, 3),
        ) {
            let (near, far) = {
                let d1 = pop[1].bits.hamming(&pop[0].bits).unwrap();
                let d2 = pop[2].bits.hamming(&pop[0].bits).unwrap();
                if d1 <= d2 { (1, 2) } else { (2, 1) }
            };
            let ratio = |tau| {
                let s = partner_scores(&pop, 0, &[near, far], tau, 3).unwrap();
                (s[1], s[0])
            };
            for tau in 0..3 {
                let (far_lo, near_lo) = ratio(tau);
                let (far_hi, near_hi) = ratio(tau + 1);
                // far/near score ratio never decreases with tau
                prop_assert!(far_hi * near_lo >= far_lo * near_hi - 1e-9);
            }
        }
    }
}
