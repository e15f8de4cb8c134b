use std::collections::HashSet;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::{Algorithm, SolverConfig};
use super::engine::{Engine, Evaluator, Survival};
use super::sorting::{assign_crowding, fast_nondominated_sort, Individual};
use super::{final_front, SolverError, SolverRun};
use crate::model::Scenario;

/// Truncation by rank, then by descending crowding distance.
pub(crate) struct CrowdingSurvival;

impl Survival for CrowdingSurvival {
    fn select(&mut self, mut combined: Vec<Individual>, size: usize, _rng: &mut ChaCha8Rng) -> Vec<Individual> {
        let fronts = fast_nondominated_sort(&mut combined);
        let mut keep = Vec::with_capacity(size);
        for front in &fronts {
            assign_crowding(&mut combined, front);
            if keep.len() + front.len() <= size {
                keep.extend_from_slice(front);
            } else {
                let last = distinct_first(&combined, front);
                keep.extend_from_slice(&last[..size - keep.len()]);
            }
            if keep.len() == size {
                break;
            }
        }
        take_indices(combined, &keep)
    }
}

/// Orders a front by descending crowding, but puts one member per distinct
/// objective vector ahead of all repeats. Copies of an extreme point would
/// otherwise all carry infinite distance and crowd out interior points.
fn distinct_first(pop: &[Individual], front: &[usize]) -> Vec<usize> {
    let mut order = front.to_vec();
    // Stable sort keeps index order among equal distances.
    order.sort_by(|&a, &b| pop[b].crowding.total_cmp(&pop[a].crowding));
    let mut seen = HashSet::new();
    let (firsts, repeats): (Vec<usize>, Vec<usize>) = order.into_iter().partition(|&i| {
        let o = pop[i].objectives;
        seen.insert([o.neg_deployed.to_bits(), o.energy.to_bits(), o.violation.to_bits()])
    });
    firsts.into_iter().chain(repeats).collect()
}

pub(crate) fn take_indices(pool: Vec<Individual>, keep: &[usize]) -> Vec<Individual> {
    let mut slots: Vec<Option<Individual>> = pool.into_iter().map(Some).collect();
    keep.iter()
        .map(|&i| slots[i].take().expect("indices are distinct"))
        .collect()
}

pub fn run_nsga2(scenario: &Scenario, cfg: &SolverConfig) -> Result<SolverRun, SolverError> {
    cfg.validate()?;
    if cfg.algorithm != Algorithm::Nsga2 {
        return Err(SolverError::WrongAlgorithm { expected: Algorithm::Nsga2, found: cfg.algorithm });
    }
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut eval = Evaluator::new(scenario, cfg.max_evaluations);
    let mut survival = CrowdingSurvival;
    let mut engine = Engine::new(scenario, cfg, &mut survival);
    let mut ignore = |_: &Individual| {};

    let initial = engine.random_individuals(cfg.population_size, &mut rng, &mut eval, &mut ignore);
    let mut pop = engine.rank(initial, &mut rng);
    let mut generations = 0;
    while eval.remaining() > 0 {
        pop = engine.generation(pop, &mut rng, &mut eval, &mut ignore);
        generations += 1;
    }

    Ok(SolverRun {
        algorithm: Algorithm::Nsga2,
        seed: cfg.seed,
        front: final_front(&pop),
        evaluations: eval.used(),
        generations,
        connected_runs: 1,
        elapsed: started.elapsed(),
    })
}
