//! Contribution tracking and proportional sampling of preference types.
//!
//! Each generation, every preference type is scored by the fraction of its
//! crossovers that produced a child strictly fitter than both parents. The
//! next generation samples types in proportion to those scores.

use rand::Rng;

use crate::error::{Error, Result};

/// Added to every contribution when sampling so that a type whose
/// contribution has dropped to zero can still be drawn and re-measured.
pub const DEFAULT_SAMPLING_FLOOR: f64 = 0.01;

#[derive(Clone, Debug, PartialEq)]
pub struct PreferenceState {
    contribution: Vec<f64>,
    cross_count: Vec<u64>,
    succ_count: Vec<u64>,
    generation: u64,
    floor: f64,
}

impl PreferenceState {
    /// Equal contributions of `1 / num_types`, zero counters, generation 0.
    pub fn new(num_types: usize) -> Result<Self> {
        Self::with_floor(num_types, DEFAULT_SAMPLING_FLOOR)
    }

    pub fn with_floor(num_types: usize, floor: f64) -> Result<Self> {
        if num_types < 1 {
            return Err(Error::InvalidParameter(
                "need at least one preference type".into(),
            ));
        }
        if !(floor >= 0.0 && floor.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "sampling floor {floor} must be finite and non-negative"
            )));
        }
        Ok(Self {
            contribution: vec![1.0 / num_types as f64; num_types],
            cross_count: vec![0; num_types],
            succ_count: vec![0; num_types],
            generation: 0,
            floor,
        })
    }

    pub fn num_types(&self) -> usize {
        self.contribution.len()
    }

    pub fn contributions(&self) -> &[f64] {
        &self.contribution
    }

    pub fn cross_counts(&self) -> &[u64] {
        &self.cross_count
    }

    pub fn succ_counts(&self) -> &[u64] {
        &self.succ_count
    }

    pub fn generation(&self) -> u64 {
        self.generation
    }

    /// Probability of drawing each type:
    /// `(c[t] + floor) / sum_k (c[k] + floor)`, uniform if every weight is 0.
    pub fn sampling_probabilities(&self) -> Vec<f64> {
        let weights: Vec<f64> = self.contribution.iter().map(|c| c + self.floor).collect();
        let total: f64 = weights.iter().sum();
        if total > 0.0 {
            weights.iter().map(|w| w / total).collect()
        } else {
            vec![1.0 / self.num_types() as f64; self.num_types()]
        }
    }

    pub fn sample_preference<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        let weights: Vec<f64> = self.contribution.iter().map(|c| c + self.floor).collect();
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return rng.gen_range(0..self.num_types()) as u32;
        }
        let mut target = rng.gen::<f64>() * total;
        for (tau, w) in weights.iter().enumerate() {
            if target < *w {
                return tau as u32;
            }
            target -= w;
        }
        // rounding left `target` past the end; the last type with weight wins
        weights.iter().rposition(|&w| w > 0.0).unwrap_or(0) as u32
    }

    /// Counts one crossover under `tau`. Returns whether it was successful:
    /// some child strictly fitter than both parents.
    pub fn record_crossover(
        &mut self,
        tau: u32,
        children: (f64, f64),
        parents: (f64, f64),
    ) -> Result<bool> {
        let t = tau as usize;
        if t >= self.num_types() {
            return Err(Error::InvalidParameter(format!(
                "preference type {tau} outside 0..{}",
                self.num_types()
            )));
        }
        let best_parent = parents.0.max(parents.1);
        let success = children.0.max(children.1) > best_parent;
        self.cross_count[t] += 1;
        if success {
            self.succ_count[t] += 1;
        }
        Ok(success)
    }

    /// Recomputes contributions from this generation's counters, then resets
    /// them. A type with no crossovers keeps its previous contribution.
    pub fn end_generation(&mut self) {
        for t in 0..self.num_types() {
            if self.cross_count[t] > 0 {
                self.contribution[t] = self.succ_count[t] as f64 / self.cross_count[t] as f64;
            }
        }
        self.cross_count.fill(0);
        self.succ_count.fill(0);
        self.generation += 1;
    }
}
