use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Nsga2,
    Nsga3,
    EpsNsga2,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Nsga2, Algorithm::Nsga3, Algorithm::EpsNsga2];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Nsga2 => "nsga2",
            Algorithm::Nsga3 => "nsga3",
            Algorithm::EpsNsga2 => "eps-nsga2",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| ConfigError(format!("unknown algorithm {s:?}; expected nsga2, nsga3 or eps-nsga2")))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid solver config: {0}")]
pub struct ConfigError(pub String);

/// Knobs of the connected-run structure used by ε-NSGA-II.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonSettings {
    /// Restart population size = ratio × archive size.
    pub population_ratio: f64,
    /// Fraction of a restarted population seeded from the archive.
    pub injection_rate: f64,
    /// Stop after this many consecutive connected runs without a new ε-box.
    pub stagnation_runs: usize,
    /// Generations per connected run.
    pub run_generations: usize,
    pub min_population: usize,
    pub max_population: usize,
}

impl Default for EpsilonSettings {
    fn default() -> Self {
        Self {
            population_ratio: 4.0,
            injection_rate: 0.25,
            stagnation_runs: 2,
            run_generations: 20,
            min_population: 10,
            max_population: 10_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    pub max_evaluations: u64,
    pub seed: u64,
    pub population_size: usize,
    pub crossover_rate: f64,
    /// Per-gene reset probability; `None` means `1 / M`.
    pub mutation_rate: Option<f64>,
    /// ε for the `-deployed` and energy axes.
    pub epsilons: [f64; 2],
    pub eps: EpsilonSettings,
}

impl SolverConfig {
    pub fn new(algorithm: Algorithm, seed: u64) -> Self {
        Self {
            algorithm,
            max_evaluations: 10_000,
            seed,
            population_size: 100,
            crossover_rate: 0.9,
            mutation_rate: None,
            epsilons: [1.0, 0.05],
            eps: EpsilonSettings::default(),
        }
    }

    pub fn mutation_rate_for(&self, m: usize) -> f64 {
        self.mutation_rate.unwrap_or(1.0 / m as f64)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let err = |msg: String| Err(ConfigError(msg));
        if self.population_size < 2 {
            return err(format!("population size must be at least 2, got {}", self.population_size));
        }
        if self.max_evaluations < self.population_size as u64 {
            return err(format!(
                "evaluation budget {} is smaller than the population size {}",
                self.max_evaluations, self.population_size
            ));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return err(format!("crossover rate {} is outside [0, 1]", self.crossover_rate));
        }
        if let Some(rate) = self.mutation_rate {
            if !(0.0..=1.0).contains(&rate) {
                return err(format!("mutation rate {rate} is outside [0, 1]"));
            }
        }
        if self.epsilons.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
            return err(format!("epsilons must be positive, got {:?}", self.epsilons));
        }
        let eps = &self.eps;
        if !(eps.population_ratio.is_finite() && eps.population_ratio > 0.0) {
            return err(format!("population ratio must be positive, got {}", eps.population_ratio));
        }
        if !(0.0..=1.0).contains(&eps.injection_rate) {
            return err(format!("injection rate {} is outside [0, 1]", eps.injection_rate));
        }
        if eps.stagnation_runs == 0 || eps.run_generations == 0 {
            return err("stagnation window and run length must be at least 1".into());
        }
        if eps.min_population < 2 || eps.min_population > eps.max_population {
            return err(format!(
                "population clamp [{}, {}] is invalid",
                eps.min_population, eps.max_population
            ));
        }
        Ok(())
    }
}
