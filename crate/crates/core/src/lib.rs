//! Genetic algorithm with self-adaptive diversity control.
//!
//! Each mating event carries a *preference type* `tau` that controls how
//! strongly the partner's Hamming distance from the first parent is rewarded.
//! Types compete: the share of crossovers under a type that produce a child
//! fitter than both parents (its *contribution*) sets how often the type is
//! drawn next generation. The population thereby settles on the degree of
//! diversity the problem needs, without a mutation rate to tune.
//!
//! Modules:
//!
//! * [`bitstring`]: chromosomes and one-point crossover / bitwise mutation
//! * [`problems`]: the nine benchmark functions and exact grid oracles
//! * [`mating`]: tournament and difference-weighted partner selection
//! * [`controller`]: contribution bookkeeping and type sampling
//! * [`engine`]: the generational loop for the adaptive and baseline methods
//! * [`metrics`]: diversity, computational effort, AVFE
//! * [`harness`]: config files, parallel seeded experiments, CSV output

#![deny(unsafe_code)]

pub mod bitstring;
pub mod controller;
pub mod engine;
mod error;
pub mod harness;
mod individual;
pub mod mating;
pub mod metrics;
pub mod problems;

pub use bitstring::BitString;
pub use controller::PreferenceState;
pub use engine::{run, GaConfig, Method, RunResult};
pub use error::{Error, Result};
pub use individual::Individual;
pub use mating::MatingParams;
pub use metrics::{EffortTable, GenerationTrace};
pub use problems::{BenchmarkProblem, DecodingSpec, Oracle, ProblemId};
