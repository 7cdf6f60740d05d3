//! The nine benchmark problems, their binary decoding, and exact grid oracles.
//!
//! Minimization problems are turned into maximization problems by the shift
//! `f*(x) = f_max - f(x)`, where `f_max` is the exact maximum of `f` over every
//! decodable chromosome. Because partner selection multiplies fitness by a
//! difference weight, the shift changes behaviour and must be exact, so it is
//! found by enumeration rather than an analytic bound.

mod cache;

pub use cache::{CacheStatus, OracleCache};

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bitstring::BitString;
use crate::error::{Error, Result};

/// Identifier of one of the nine benchmark problems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemId {
    OneMax,
    Deceptive,
    Multimodal,
    Sphere,
    Step,
    ShafferF6,
    Rastrigin,
    Schwefel,
    Griewangk,
}

impl ProblemId {
    pub const ALL: [ProblemId; 9] = [
        ProblemId::OneMax,
        ProblemId::Deceptive,
        ProblemId::Multimodal,
        ProblemId::Sphere,
        ProblemId::Step,
        ProblemId::ShafferF6,
        ProblemId::Rastrigin,
        ProblemId::Schwefel,
        ProblemId::Griewangk,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemId::OneMax => "one_max",
            ProblemId::Deceptive => "deceptive",
            ProblemId::Multimodal => "multimodal",
            ProblemId::Sphere => "sphere",
            ProblemId::Step => "step",
            ProblemId::ShafferF6 => "shaffer_f6",
            ProblemId::Rastrigin => "rastrigin",
            ProblemId::Schwefel => "schwefel",
            ProblemId::Griewangk => "griewangk",
        }
    }

    pub fn direction(self) -> Direction {
        match self {
            ProblemId::OneMax | ProblemId::Deceptive | ProblemId::Multimodal => {
                Direction::Maximize
            }
            _ => Direction::Minimize,
        }
    }

    /// Standard decoding for the problem; `None` for the bit-level problems.
    pub fn default_decoding(self) -> Option<DecodingSpec> {
        let spec = |n_vars, bits_per_var, lo_index, divisor| DecodingSpec {
            n_vars,
            bits_per_var,
            lo_index,
            divisor,
        };
        match self {
            ProblemId::OneMax | ProblemId::Deceptive => None,
            ProblemId::Multimodal => Some(spec(1, 30, 0, ((1u64 << 30) - 1) as f64)),
            // [-5.12, 5.11] in steps of 0.01
            ProblemId::Sphere | ProblemId::Rastrigin => Some(spec(3, 10, -512, 100.0)),
            ProblemId::Step => Some(spec(5, 10, -512, 100.0)),
            // [-102.4, 102.3] in steps of 0.1
            ProblemId::ShafferF6 => Some(spec(2, 11, -1024, 10.0)),
            // [-512, 511] in unit steps
            ProblemId::Schwefel | ProblemId::Griewangk => Some(spec(3, 10, -512, 1.0)),
        }
    }

    pub fn default_length(self) -> usize {
        match self.default_decoding() {
            Some(d) => d.length(),
            None => 45,
        }
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProblemId::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownProblem(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Maximize,
    Minimize,
}

/// Plain unsigned binary decoding, most significant bit first.
///
/// Variable `k` reads bits `k*b .. (k+1)*b` as an integer `u` and maps it to
/// `(u + lo_index) / divisor`. Expressing the grid through an integer offset
/// and a divisor keeps decimal grid points such as `0.00` or `-5.12`
/// correctly rounded.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecodingSpec {
    pub n_vars: usize,
    pub bits_per_var: usize,
    pub lo_index: i64,
    pub divisor: f64,
}

impl DecodingSpec {
    pub fn length(&self) -> usize {
        self.n_vars * self.bits_per_var
    }

    pub fn lo(&self) -> f64 {
        self.value_of(0)
    }

    pub fn step(&self) -> f64 {
        1.0 / self.divisor
    }

    /// Number of grid points per variable.
    pub fn levels(&self) -> u64 {
        1u64 << self.bits_per_var
    }

    #[inline]
    pub fn value_of(&self, u: u64) -> f64 {
        (u as i64 + self.lo_index) as f64 / self.divisor
    }

    /// Inverse of [`value_of`](Self::value_of) on grid points.
    pub fn index_of(&self, x: f64) -> Option<u64> {
        let u = (x * self.divisor).round() as i64 - self.lo_index;
        (0..self.levels() as i64)
            .contains(&u)
            .then_some(u as u64)
            .filter(|&u| self.value_of(u) == x)
    }

    pub fn decode(&self, bits: &BitString) -> Result<Vec<f64>> {
        if bits.len() != self.length() {
            return Err(Error::DimensionMismatch {
                expected: self.length(),
                found: bits.len(),
            });
        }
        Ok(self.decode_unchecked(bits))
    }

    fn decode_unchecked(&self, bits: &BitString) -> Vec<f64> {
        (0..self.n_vars)
            .map(|k| self.value_of(bits.segment_value(k * self.bits_per_var, self.bits_per_var)))
            .collect()
    }

    /// Chromosome whose segments hold the given grid indices.
    pub fn encode_indices(&self, indices: &[u64]) -> Result<BitString> {
        if indices.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                found: indices.len(),
            });
        }
        BitString::from_segments(indices, self.bits_per_var)
    }
}

/// Deceptive block value by number of ones in a 3-bit block.
pub fn deceptive_block(ones: usize) -> f64 {
    match ones {
        0 => 0.9,
        1 => 0.8,
        2 => 0.0,
        3 => 1.0,
        _ => panic!("deceptive block has at most 3 ones, got {ones}"),
    }
}

fn multimodal_value(x: f64) -> f64 {
    let envelope = (-2.0 * std::f64::consts::LN_2 * ((x - 0.08) / 0.854).powi(2)).exp();
    envelope * (5.0 * PI * (x.powf(0.75) - 0.05)).sin().powi(6)
}

fn shaffer_value(xs: &[f64]) -> f64 {
    let r2 = xs.iter().fold(0.0, |acc, x| acc + x * x);
    0.5 + (r2.sqrt().sin().powi(2) - 0.5) / (1.0 + 0.001 * r2).powi(2)
}

#[inline]
fn griewangk_square(x: f64) -> f64 {
    x * x / 4000.0
}

/// Cosine factor for 0-based dimension `k`.
#[inline]
fn griewangk_cos(x: f64, k: usize) -> f64 {
    (x / ((k + 1) as f64).sqrt()).cos()
}

#[inline]
fn griewangk_combine(sum: f64, product: f64) -> f64 {
    sum - product + 1.0
}

fn griewangk_value(xs: &[f64]) -> f64 {
    let sum = xs.iter().fold(0.0, |acc, &x| acc + griewangk_square(x));
    let product = xs
        .iter()
        .enumerate()
        .fold(1.0, |acc, (k, &x)| acc * griewangk_cos(x, k));
    griewangk_combine(sum, product)
}

/// Per-variable term of the separable problems, `f = constant + sum(term)`.
fn separable_term(id: ProblemId, x: f64) -> Option<f64> {
    match id {
        ProblemId::Sphere => Some(x * x),
        ProblemId::Step => Some(x.floor()),
        ProblemId::Rastrigin => Some(x * x - 10.0 * (2.0 * PI * x).cos()),
        ProblemId::Schwefel => Some(-x * x.abs().sqrt().sin()),
        _ => None,
    }
}

fn separable_constant(id: ProblemId, n_vars: usize) -> f64 {
    match id {
        ProblemId::Rastrigin => 10.0 * n_vars as f64,
        _ => 0.0,
    }
}

fn separable_value(id: ProblemId, xs: &[f64]) -> f64 {
    let sum = xs.iter().fold(0.0, |acc, &x| {
        acc + separable_term(id, x).expect("separable problem")
    });
    separable_constant(id, xs.len()) + sum
}

/// Objective value of a real-valued problem at an arbitrary point.
///
/// Works for any dimension, which the surface sampler uses to produce 2-D
/// slices. Returns `None` for the bit-level problems.
pub fn objective_at(id: ProblemId, xs: &[f64]) -> Option<f64> {
    match id {
        ProblemId::OneMax | ProblemId::Deceptive => None,
        ProblemId::Multimodal => xs.first().map(|&x| multimodal_value(x)),
        ProblemId::ShafferF6 => Some(shaffer_value(xs)),
        ProblemId::Griewangk => Some(griewangk_value(xs)),
        _ => Some(separable_value(id, xs)),
    }
}

/// Exact grid oracle values for one problem.
#[derive(Clone, Debug, PartialEq)]
pub struct Oracle {
    /// Shift constant; `None` for maximization problems.
    pub f_max: Option<f64>,
    /// Best shifted fitness over all decodable chromosomes.
    pub optimum_fitness: f64,
    pub witness: BitString,
}

/// Largest and smallest raw objective values with attaining chromosomes.
#[derive(Clone, Debug, PartialEq)]
pub struct RawExtremes {
    pub max: (f64, BitString),
    pub min: (f64, BitString),
}

/// Extremes of the raw objective by chromosome index.
#[derive(Clone, Debug)]
struct GridExtrema {
    max: (f64, u64),
    min: (f64, u64),
}

impl GridExtrema {
    fn single(value: f64, index: u64) -> Self {
        Self {
            max: (value, index),
            min: (value, index),
        }
    }

    /// Merge keeping the lowest chromosome index on ties, so that parallel
    /// reductions are deterministic.
    fn merge(self, other: Self) -> Self {
        let pick_max = |a: (f64, u64), b: (f64, u64)| {
            if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        };
        let pick_min = |a: (f64, u64), b: (f64, u64)| {
            if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        };
        Self {
            max: pick_max(self.max, other.max),
            min: pick_min(self.min, other.min),
        }
    }
}

/// One of the benchmark problems with its decoding and (once computed) its
/// grid oracle.
#[derive(Clone, Debug)]
pub struct BenchmarkProblem {
    id: ProblemId,
    length: usize,
    decoding: Option<DecodingSpec>,
    oracle: Option<Oracle>,
}

impl BenchmarkProblem {
    /// Problem with its standard decoding and no oracle yet.
    pub fn new(id: ProblemId) -> Self {
        Self {
            id,
            length: id.default_length(),
            decoding: id.default_decoding(),
            oracle: None,
        }
    }

    /// Real-valued problem over a custom grid, e.g. a reduced instance.
    pub fn with_decoding(id: ProblemId, decoding: DecodingSpec) -> Result<Self> {
        if decoding.n_vars == 0 || decoding.bits_per_var == 0 || decoding.bits_per_var > 62 {
            return Err(Error::InvalidParameter(format!(
                "bad decoding {decoding:?}"
            )));
        }
        if id.default_decoding().is_none() {
            return Err(Error::InvalidParameter(format!(
                "`{id}` operates on raw bits and takes no decoding"
            )));
        }
        if id == ProblemId::Multimodal && decoding.n_vars != 1 {
            return Err(Error::InvalidParameter(
                "multimodal takes a single variable".into(),
            ));
        }
        Ok(Self {
            id,
            length: decoding.length(),
            decoding: Some(decoding),
            oracle: None,
        })
    }

    /// Problem with its standard decoding and oracle computed in-process.
    pub fn initialized(id: ProblemId) -> Result<Self> {
        let mut p = Self::new(id);
        p.initialize()?;
        Ok(p)
    }

    pub fn id(&self) -> ProblemId {
        self.id
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn decoding(&self) -> Option<&DecodingSpec> {
        self.decoding.as_ref()
    }

    pub fn direction(&self) -> Direction {
        self.id.direction()
    }

    pub fn oracle(&self) -> Option<&Oracle> {
        self.oracle.as_ref()
    }

    pub fn f_max(&self) -> Option<f64> {
        self.oracle.as_ref().and_then(|o| o.f_max)
    }

    pub fn optimum_fitness(&self) -> Option<f64> {
        self.oracle.as_ref().map(|o| o.optimum_fitness)
    }

    pub fn initialize(&mut self) -> Result<()> {
        if self.oracle.is_none() {
            self.oracle = Some(self.compute_oracle()?);
        }
        Ok(())
    }

    /// Installs a previously computed oracle after checking that it is
    /// consistent with this problem.
    pub fn set_oracle(&mut self, oracle: Oracle) -> Result<()> {
        self.check_oracle(&oracle)?;
        self.oracle = Some(oracle);
        Ok(())
    }

    fn check_oracle(&self, oracle: &Oracle) -> Result<()> {
        let bad = |message: String| Err(Error::InvalidParameter(message));
        if oracle.witness.len() != self.length {
            return bad(format!(
                "witness for `{}` has {} bits, expected {}",
                self.id,
                oracle.witness.len(),
                self.length
            ));
        }
        if oracle.f_max.is_some() != (self.direction() == Direction::Minimize) {
            return bad(format!("shift constant presence wrong for `{}`", self.id));
        }
        let raw = self.eval_raw(&oracle.witness)?;
        let fit = oracle.f_max.map_or(raw, |m| m - raw);
        if fit != oracle.optimum_fitness {
            return bad(format!(
                "witness for `{}` scores {fit}, oracle claims {}",
                self.id, oracle.optimum_fitness
            ));
        }
        Ok(())
    }

    fn check_len(&self, bits: &BitString) -> Result<()> {
        if bits.len() != self.length {
            return Err(Error::DimensionMismatch {
                expected: self.length,
                found: bits.len(),
            });
        }
        Ok(())
    }

    pub fn decode(&self, bits: &BitString) -> Result<Option<Vec<f64>>> {
        self.check_len(bits)?;
        Ok(self.decoding.map(|d| d.decode_unchecked(bits)))
    }

    /// Unshifted objective value.
    pub fn eval_raw(&self, bits: &BitString) -> Result<f64> {
        self.check_len(bits)?;
        Ok(self.eval_raw_unchecked(bits))
    }

    fn eval_raw_unchecked(&self, bits: &BitString) -> f64 {
        match self.id {
            ProblemId::OneMax => bits.count_ones() as f64,
            ProblemId::Deceptive => (0..self.length / 3)
                .map(|k| deceptive_block(bits.segment_value(3 * k, 3).count_ones() as usize))
                .fold(0.0, |acc, g| acc + g),
            _ => {
                let xs = self
                    .decoding
                    .expect("real-valued problem has a decoding")
                    .decode_unchecked(bits);
                objective_at(self.id, &xs).expect("real-valued problem")
            }
        }
    }

    /// Shifted, non-negative fitness to be maximized.
    pub fn fitness(&self, bits: &BitString) -> Result<f64> {
        self.check_len(bits)?;
        let raw = self.eval_raw_unchecked(bits);
        match self.direction() {
            Direction::Maximize => Ok(raw),
            Direction::Minimize => {
                let f_max = self
                    .f_max()
                    .ok_or_else(|| Error::UninitializedOracle(self.id.to_string()))?;
                Ok(f_max - raw)
            }
        }
    }

    /// True when `fitness` is within `1e-9` (relative, floored at 1) of the
    /// grid optimum.
    pub fn is_success(&self, fitness: f64) -> Result<bool> {
        let opt = self
            .optimum_fitness()
            .ok_or_else(|| Error::UninitializedOracle(self.id.to_string()))?;
        Ok(fitness >= success_threshold(opt))
    }

    /// Exact maximum of the raw objective over every decodable chromosome.
    pub fn compute_shift_constant(&self) -> Result<f64> {
        if self.direction() == Direction::Maximize {
            return Err(Error::InvalidDirection(self.id.to_string()));
        }
        Ok(self.grid_extrema().max.0)
    }

    /// Best shifted fitness and one chromosome attaining it.
    pub fn grid_optimum(&self) -> Result<(f64, BitString)> {
        if let Some(o) = &self.oracle {
            return Ok((o.optimum_fitness, o.witness.clone()));
        }
        let o = self.compute_oracle()?;
        Ok((o.optimum_fitness, o.witness))
    }

    /// Computes shift constant, grid optimum and witness in one pass.
    pub fn compute_oracle(&self) -> Result<Oracle> {
        match self.id {
            ProblemId::OneMax => Ok(Oracle {
                f_max: None,
                optimum_fitness: self.length as f64,
                witness: BitString::ones(self.length)?,
            }),
            ProblemId::Deceptive => {
                let witness = BitString::ones(self.length)?;
                Ok(Oracle {
                    f_max: None,
                    optimum_fitness: self.eval_raw_unchecked(&witness),
                    witness,
                })
            }
            ProblemId::Multimodal => {
                let (value, index) = self.multimodal_scan();
                Ok(Oracle {
                    f_max: None,
                    optimum_fitness: value,
                    witness: self.chromosome_at(index)?,
                })
            }
            _ => {
                let ext = self.grid_extrema();
                let witness = self.chromosome_at(ext.min.1)?;
                let f_max = ext.max.0;
                let optimum_fitness = f_max - self.eval_raw_unchecked(&witness);
                Ok(Oracle {
                    f_max: Some(f_max),
                    optimum_fitness,
                    witness,
                })
            }
        }
    }

    fn decoding_or_panic(&self) -> DecodingSpec {
        self.decoding.expect("real-valued problem has a decoding")
    }

    /// Chromosome whose bits, read MSB-first as one integer, equal `index`.
    fn chromosome_at(&self, index: u64) -> Result<BitString> {
        let d = self.decoding_or_panic();
        let b = d.bits_per_var;
        let mask = d.levels() - 1;
        let indices: Vec<u64> = (0..d.n_vars)
            .map(|k| (index >> ((d.n_vars - 1 - k) * b)) & mask)
            .collect();
        d.encode_indices(&indices)
    }

    fn grid_extrema(&self) -> GridExtrema {
        match self.id {
            ProblemId::Griewangk => self.griewangk_extrema(),
            ProblemId::Sphere | ProblemId::Step | ProblemId::Rastrigin | ProblemId::Schwefel => {
                self.separable_extrema()
            }
            _ => self.brute_force_extrema(),
        }
    }

    /// Per-dimension enumeration. Float addition is monotone, so combining
    /// the per-dimension extremes gives the exact grid extremes of the sum.
    fn separable_extrema(&self) -> GridExtrema {
        let d = self.decoding_or_panic();
        let per_dim = (0..d.levels())
            .map(|u| GridExtrema::single(separable_term(self.id, d.value_of(u)).unwrap(), u))
            .reduce(GridExtrema::merge)
            .expect("at least one grid level");
        let index_of = |u: u64| {
            (0..d.n_vars).fold(0u64, |acc, _| (acc << d.bits_per_var) | u)
        };
        let (max_idx, min_idx) = (index_of(per_dim.max.1), index_of(per_dim.min.1));
        let value = |idx| {
            let bits = self.chromosome_at(idx).expect("valid index");
            self.eval_raw_unchecked(&bits)
        };
        GridExtrema {
            max: (value(max_idx), max_idx),
            min: (value(min_idx), min_idx),
        }
    }

    /// Raw-objective extremes over the decoding grid, via the same
    /// per-problem strategy the oracle uses.
    pub fn raw_extremes(&self) -> Result<RawExtremes> {
        self.require_decoding()?;
        self.to_raw_extremes(self.grid_extrema())
    }

    /// Raw-objective extremes by enumerating every chromosome. Limited to
    /// chromosomes of at most 32 bits.
    pub fn raw_extremes_brute_force(&self) -> Result<RawExtremes> {
        self.require_decoding()?;
        if self.length > 32 {
            return Err(Error::InvalidParameter(format!(
                "brute force over 2^{} chromosomes refused",
                self.length
            )));
        }
        self.to_raw_extremes(self.brute_force_extrema())
    }

    fn require_decoding(&self) -> Result<()> {
        if self.decoding.is_none() {
            return Err(Error::InvalidParameter(format!(
                "`{}` has no decoding grid",
                self.id
            )));
        }
        Ok(())
    }

    fn to_raw_extremes(&self, ext: GridExtrema) -> Result<RawExtremes> {
        Ok(RawExtremes {
            max: (ext.max.0, self.chromosome_at(ext.max.1)?),
            min: (ext.min.0, self.chromosome_at(ext.min.1)?),
        })
    }

    fn brute_force_extrema(&self) -> GridExtrema {
        let d = self.decoding_or_panic();
        let total = 1u64 << d.length();
        let mask = d.levels() - 1;
        (0..total)
            .into_par_iter()
            .map_init(
                || vec![0.0; d.n_vars],
                |xs, idx| {
                    for (k, x) in xs.iter_mut().enumerate() {
                        let shift = (d.n_vars - 1 - k) * d.bits_per_var;
                        *x = d.value_of((idx >> shift) & mask);
                    }
                    GridExtrema::single(objective_at(self.id, xs).unwrap(), idx)
                },
            )
            .reduce_with(GridExtrema::merge)
            .expect("non-empty grid")
    }

    /// Full enumeration using per-dimension lookup tables that reproduce
    /// `griewangk_value` operation for operation.
    fn griewangk_extrema(&self) -> GridExtrema {
        let d = self.decoding_or_panic();
        if d.n_vars != 3 {
            return self.brute_force_extrema();
        }
        let levels = d.levels();
        let squares: Vec<f64> = (0..levels).map(|u| griewangk_square(d.value_of(u))).collect();
        let cosines: Vec<Vec<f64>> = (0..3)
            .map(|k| (0..levels).map(|u| griewangk_cos(d.value_of(u), k)).collect())
            .collect();
        let b = d.bits_per_var;
        (0..levels)
            .into_par_iter()
            .map(|u0| {
                let mut best: Option<GridExtrema> = None;
                for u1 in 0..levels {
                    let s01 = 0.0 + squares[u0 as usize] + squares[u1 as usize];
                    let p01 = 1.0 * cosines[0][u0 as usize] * cosines[1][u1 as usize];
                    for u2 in 0..levels {
                        let sum = s01 + squares[u2 as usize];
                        let product = p01 * cosines[2][u2 as usize];
                        let v = griewangk_combine(sum, product);
                        let idx = (u0 << (2 * b)) | (u1 << b) | u2;
                        let here = GridExtrema::single(v, idx);
                        best = Some(match best {
                            None => here,
                            Some(acc) => acc.merge(here),
                        });
                    }
                }
                best.expect("non-empty slice")
            })
            .reduce_with(GridExtrema::merge)
            .expect("non-empty grid")
    }

    /// Coarse scan over every 1024th index, then an exhaustive scan of the
    /// window between the neighbours of the best coarse point.
    fn multimodal_scan(&self) -> (f64, u64) {
        let d = self.decoding_or_panic();
        let levels = d.levels();
        let stride = if d.bits_per_var > 20 {
            1u64 << (d.bits_per_var - 20)
        } else {
            1
        };
        let eval = |u: u64| GridExtrema::single(multimodal_value(d.value_of(u)), u);
        let coarse = (0..levels / stride)
            .into_par_iter()
            .map(|k| eval(k * stride))
            .reduce_with(GridExtrema::merge)
            .expect("non-empty grid");
        let centre = coarse.max.1;
        let lo = centre.saturating_sub(stride);
        let hi = (centre + stride).min(levels - 1);
        let fine = (lo..=hi)
            .map(eval)
            .reduce(GridExtrema::merge)
            .expect("non-empty window");
        fine.merge(coarse).max
    }
}

/// Lowest fitness counted as reaching the optimum `opt`.
pub fn success_threshold(opt: f64) -> f64 {
    opt - 1e-9 * opt.abs().max(1.0)
}

/// Samples the objective on a regular 2-D grid spanning the problem's
/// variable range (1-D for the multimodal function).
///
/// Each entry is `(point, value)`, rows ordered by first then second
/// coordinate.
pub fn surface_samples(id: ProblemId, resolution: usize) -> Result<Vec<(Vec<f64>, f64)>> {
    let d = id.default_decoding().ok_or_else(|| {
        Error::InvalidParameter(format!("`{id}` has no real-valued surface"))
    })?;
    if resolution < 2 {
        return Err(Error::InvalidParameter(format!(
            "resolution {resolution} must be at least 2"
        )));
    }
    let (lo, hi) = (d.lo(), d.value_of(d.levels() - 1));
    let axis: Vec<f64> = (0..resolution)
        .map(|i| lo + (hi - lo) * i as f64 / (resolution - 1) as f64)
        .collect();
    let points: Vec<Vec<f64>> = if id == ProblemId::Multimodal {
        axis.iter().map(|&x| vec![x]).collect()
    } else {
        axis.iter()
            .flat_map(|&x| axis.iter().map(move |&y| vec![x, y]))
            .collect()
    };
    Ok(points
        .into_iter()
        .map(|p| {
            let v = objective_at(id, &p).expect("real-valued problem");
            (p, v)
        })
        .collect())
}
