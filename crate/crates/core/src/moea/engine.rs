//! The generational loop shared by all three drivers.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::config::SolverConfig;
use super::sorting::Individual;
use super::variation::{random_assignment, variation};
use crate::model::{evaluate_unchecked, Assignment, Scenario};

/// Counts every objective evaluation against the budget.
pub(crate) struct Evaluator<'a> {
    scenario: &'a Scenario,
    used: u64,
    budget: u64,
}

impl<'a> Evaluator<'a> {
    pub fn new(scenario: &'a Scenario, budget: u64) -> Self {
        Self { scenario, used: 0, budget }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn remaining(&self) -> u64 {
        self.budget - self.used
    }

    pub fn evaluate(&mut self, genotype: Assignment) -> Individual {
        debug_assert!(self.used < self.budget, "evaluation budget exceeded");
        self.used += 1;
        let objectives = evaluate_unchecked(self.scenario, &genotype);
        Individual::new(genotype, objectives)
    }
}

/// Environmental selection: reduce `combined` to `size` survivors and leave
/// `rank`/`crowding` set for the next round of tournaments.
pub(crate) trait Survival {
    fn select(&mut self, combined: Vec<Individual>, size: usize, rng: &mut ChaCha8Rng) -> Vec<Individual>;
}

/// Lower rank wins, then larger crowding; the first argument keeps ties.
fn tournament_winner<'p>(a: &'p Individual, b: &'p Individual) -> &'p Individual {
    if b.rank < a.rank || (b.rank == a.rank && b.crowding > a.crowding) {
        b
    } else {
        a
    }
}

fn binary_tournament<'p>(pop: &'p [Individual], rng: &mut ChaCha8Rng) -> &'p Individual {
    let i = rng.gen_range(0..pop.len());
    let j = rng.gen_range(0..pop.len());
    tournament_winner(&pop[i], &pop[j])
}

pub(crate) struct Engine<'s> {
    pub m: usize,
    pub n: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub survival: &'s mut dyn Survival,
}

impl<'s> Engine<'s> {
    pub fn new(scenario: &Scenario, cfg: &SolverConfig, survival: &'s mut dyn Survival) -> Self {
        Self {
            m: scenario.num_vnfs(),
            n: scenario.num_nodes(),
            crossover_rate: cfg.crossover_rate,
            mutation_rate: cfg.mutation_rate_for(scenario.num_vnfs()),
            survival,
        }
    }

    /// Evaluates up to `count` uniformly random genotypes.
    pub fn random_individuals(
        &self,
        count: usize,
        rng: &mut ChaCha8Rng,
        eval: &mut Evaluator,
        on_eval: &mut dyn FnMut(&Individual),
    ) -> Vec<Individual> {
        let count = count.min(eval.remaining() as usize);
        (0..count)
            .map(|_| {
                let ind = eval.evaluate(random_assignment(self.m, self.n, rng));
                on_eval(&ind);
                ind
            })
            .collect()
    }

    /// Ranks an initial population so tournaments can run on it.
    pub fn rank(&mut self, pop: Vec<Individual>, rng: &mut ChaCha8Rng) -> Vec<Individual> {
        let size = pop.len();
        self.survival.select(pop, size, rng)
    }

    /// One (μ+λ) generation. Offspring count is capped by the remaining budget.
    pub fn generation(
        &mut self,
        pop: Vec<Individual>,
        rng: &mut ChaCha8Rng,
        eval: &mut Evaluator,
        on_eval: &mut dyn FnMut(&Individual),
    ) -> Vec<Individual> {
        let size = pop.len();
        let wanted = size.min(eval.remaining() as usize);
        let mut offspring = Vec::with_capacity(wanted + 1);
        while offspring.len() < wanted {
            let p1 = binary_tournament(&pop, rng);
            let p2 = binary_tournament(&pop, rng);
            let (c1, c2) = variation(
                (&p1.genotype, &p2.genotype),
                self.n,
                self.crossover_rate,
                self.mutation_rate,
                rng,
            );
            for child in [c1, c2] {
                if offspring.len() < wanted {
                    let ind = eval.evaluate(child);
                    on_eval(&ind);
                    offspring.push(ind);
                }
            }
        }
        let mut combined = pop;
        combined.extend(offspring);
        self.survival.select(combined, size, rng)
    }
}
