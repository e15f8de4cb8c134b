//! NSGA-family solvers over the integer placement genotype.
//!
//! All drivers share one (μ+λ) generational engine: binary tournaments on
//! `(rank, crowding)`, uniform crossover plus per-gene reset mutation, and a
//! pluggable survival step. Ranking uses constrained domination, so
//! infeasible populations are driven by violation alone. Runs are
//! single-threaded and fully determined by `(scenario, config)`.

mod archive;
mod config;
mod engine;
mod eps_nsga2;
mod nsga2;
mod nsga3;
mod sorting;
mod variation;

use std::time::Duration;

use thiserror::Error;

pub use archive::{BoxIndex, EpsilonArchive, Offer};
pub use config::{Algorithm, ConfigError, EpsilonSettings, SolverConfig};
pub use eps_nsga2::{restart_population_size, run_eps_nsga2};
pub use nsga2::run_nsga2;
pub use nsga3::{associate, das_dennis_2d, divisions_for, normalize, run_nsga3};
pub use sorting::{
    assign_crowding, constrained_dominates, crowding_distances, fast_nondominated_sort, Individual,
};
pub use variation::{mutate, random_assignment, variation};

use crate::model::{FrontMember, ParetoFront, Scenario};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("config selects {found}, but the {expected} driver was called")]
    WrongAlgorithm { expected: Algorithm, found: Algorithm },
}

/// Outcome of one solver run.
#[derive(Debug, Clone)]
pub struct SolverRun {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub front: ParetoFront,
    /// Exact number of objective evaluations performed.
    pub evaluations: u64,
    pub generations: usize,
    /// Connected runs for ε-NSGA-II; 1 for the plain drivers.
    pub connected_runs: usize,
    pub elapsed: Duration,
}

/// Runs the driver selected by `cfg.algorithm`.
pub fn solve(scenario: &Scenario, cfg: &SolverConfig) -> Result<SolverRun, SolverError> {
    match cfg.algorithm {
        Algorithm::Nsga2 => run_nsga2(scenario, cfg),
        Algorithm::Nsga3 => run_nsga3(scenario, cfg),
        Algorithm::EpsNsga2 => run_eps_nsga2(scenario, cfg),
    }
}

/// Feasible nondominated subset of a population, deduplicated by objectives.
pub(crate) fn final_front(pop: &[Individual]) -> ParetoFront {
    ParetoFront::from_candidates(pop.iter().map(|ind| FrontMember {
        placement: ind.genotype.clone(),
        objectives: ind.objectives,
    }))
}
