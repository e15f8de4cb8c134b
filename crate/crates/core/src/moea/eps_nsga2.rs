//! ε-NSGA-II: NSGA-II feeding an ε-dominance archive, organised as a chain
//! of connected runs.
//!
//! Every evaluated feasible individual is offered to the archive. After each
//! connected run of `run_generations` generations the population is rebuilt
//! from the archive (a `injection_rate` share) plus random immigrants, sized
//! to `population_ratio × archive` within the configured clamp. The search
//! stops once `stagnation_runs` consecutive connected runs add no new ε-box,
//! or when the evaluation budget is spent. The archive is the result.

use std::time::Instant;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::archive::EpsilonArchive;
use super::config::{Algorithm, SolverConfig};
use super::engine::{Engine, Evaluator};
use super::nsga2::CrowdingSurvival;
use super::sorting::Individual;
use super::{SolverError, SolverRun};
use crate::model::{FrontMember, ParetoFront, Scenario};

/// Population size for a restart with `archive_len` archive members.
pub fn restart_population_size(cfg: &SolverConfig, archive_len: usize) -> usize {
    let s = &cfg.eps;
    let target = (s.population_ratio * archive_len as f64).ceil() as usize;
    target.clamp(s.min_population, s.max_population)
}

fn feed(archive: &mut EpsilonArchive) -> impl FnMut(&Individual) + '_ {
    move |ind| {
        if ind.objectives.is_feasible() {
            archive.offer(ind);
        }
    }
}

pub fn run_eps_nsga2(scenario: &Scenario, cfg: &SolverConfig) -> Result<SolverRun, SolverError> {
    cfg.validate()?;
    if cfg.algorithm != Algorithm::EpsNsga2 {
        return Err(SolverError::WrongAlgorithm { expected: Algorithm::EpsNsga2, found: cfg.algorithm });
    }
    let settings = &cfg.eps;
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut eval = Evaluator::new(scenario, cfg.max_evaluations);
    let mut archive = EpsilonArchive::new(cfg.epsilons);
    let mut survival = CrowdingSurvival;
    let mut engine = Engine::new(scenario, cfg, &mut survival);

    let initial = engine.random_individuals(cfg.population_size, &mut rng, &mut eval, &mut feed(&mut archive));
    let mut pop = engine.rank(initial, &mut rng);
    let mut generations = 0;
    let mut connected_runs = 0;
    let mut stagnant = 0;

    'search: loop {
        let boxes_before = archive.boxes();
        connected_runs += 1;
        for _ in 0..settings.run_generations {
            if eval.remaining() == 0 {
                break 'search;
            }
            pop = engine.generation(pop, &mut rng, &mut eval, &mut feed(&mut archive));
            generations += 1;
        }
        if eval.remaining() == 0 {
            break;
        }

        if archive.is_empty() {
            // Nothing feasible yet: keep evolving the same population.
            continue;
        }
        let gained = archive.boxes().difference(&boxes_before).next().is_some();
        stagnant = if gained { 0 } else { stagnant + 1 };
        if stagnant >= settings.stagnation_runs {
            break;
        }

        let current = archive.members().to_vec();
        let size = restart_population_size(cfg, current.len());
        let inject = current
            .len()
            .min((settings.injection_rate * size as f64).ceil() as usize);
        let mut next: Vec<Individual> = if inject == current.len() {
            current
        } else {
            let mut picks = sample(&mut rng, current.len(), inject).into_vec();
            picks.sort_unstable();
            picks.into_iter().map(|i| current[i].clone()).collect()
        };
        next.extend(engine.random_individuals(size - next.len(), &mut rng, &mut eval, &mut feed(&mut archive)));
        pop = engine.rank(next, &mut rng);
    }

    let front = ParetoFront::from_candidates(archive.members().iter().map(|m| FrontMember {
        placement: m.genotype.clone(),
        objectives: m.objectives,
    }));
    Ok(SolverRun {
        algorithm: Algorithm::EpsNsga2,
        seed: cfg.seed,
        front,
        evaluations: eval.used(),
        generations,
        connected_runs,
        elapsed: started.elapsed(),
    })
}
