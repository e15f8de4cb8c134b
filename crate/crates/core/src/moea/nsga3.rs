//! NSGA-III: the last admitted front is filled by reference-point niching
//! instead of crowding distance.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::{Algorithm, SolverConfig};
use super::engine::{Engine, Evaluator, Survival};
use super::nsga2::take_indices;
use super::sorting::{fast_nondominated_sort, Individual};
use super::{final_front, SolverError, SolverRun};
use crate::model::Scenario;

/// Das–Dennis points on the two-objective simplex with `divisions` steps.
pub fn das_dennis_2d(divisions: usize) -> Vec<[f64; 2]> {
    if divisions == 0 {
        return vec![[0.5, 0.5]];
    }
    let h = divisions as f64;
    (0..=divisions)
        .map(|k| [k as f64 / h, (divisions - k) as f64 / h])
        .collect()
}

/// Largest `H` with `H + 1 <= population`.
pub fn divisions_for(population: usize) -> usize {
    population.saturating_sub(1)
}

/// Translates by the ideal point and scales by hyperplane intercepts,
/// falling back to the nadir of the set when the extreme points are
/// degenerate.
pub fn normalize(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let ideal = [0, 1].map(|k| points.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min));
    let shifted: Vec<[f64; 2]> = points.iter().map(|p| [p[0] - ideal[0], p[1] - ideal[1]]).collect();

    let asf = |p: &[f64; 2], axis: usize| {
        let w = if axis == 0 { [1.0, 1e-6] } else { [1e-6, 1.0] };
        (p[0] / w[0]).max(p[1] / w[1])
    };
    let extreme = |axis: usize| {
        shifted
            .iter()
            .min_by(|a, b| asf(a, axis).total_cmp(&asf(b, axis)))
            .copied()
            .unwrap_or([0.0, 0.0])
    };
    let (e0, e1) = (extreme(0), extreme(1));

    // Plane a·x = 1 through both extremes; intercept on axis k is 1 / a_k.
    let det = e0[0] * e1[1] - e0[1] * e1[0];
    let mut intercepts = None;
    if det.abs() > 1e-12 {
        let a0 = (e1[1] - e0[1]) / det;
        let a1 = (e0[0] - e1[0]) / det;
        if a0 > 1e-12 && a1 > 1e-12 {
            intercepts = Some([1.0 / a0, 1.0 / a1]);
        }
    }
    let intercepts = intercepts.unwrap_or_else(|| {
        [0, 1].map(|k| shifted.iter().map(|p| p[k]).fold(0.0, f64::max))
    });
    let intercepts = intercepts.map(|x| if x > 1e-12 { x } else { 1.0 });

    shifted
        .iter()
        .map(|p| [p[0] / intercepts[0], p[1] / intercepts[1]])
        .collect()
}

/// Nearest reference direction and perpendicular distance to it.
pub fn associate(point: &[f64; 2], refs: &[[f64; 2]]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (j, r) in refs.iter().enumerate() {
        let norm2 = r[0] * r[0] + r[1] * r[1];
        let t = (point[0] * r[0] + point[1] * r[1]) / norm2;
        let d0 = point[0] - t * r[0];
        let d1 = point[1] - t * r[1];
        let d = (d0 * d0 + d1 * d1).sqrt();
        if d < best.1 {
            best = (j, d);
        }
    }
    best
}

pub(crate) struct NichingSurvival {
    refs: Vec<[f64; 2]>,
}

impl NichingSurvival {
    pub fn new(population: usize) -> Self {
        Self { refs: das_dennis_2d(divisions_for(population)) }
    }

    #[cfg(test)]
    pub fn reference_points(&self) -> &[[f64; 2]] {
        &self.refs
    }
}

impl Survival for NichingSurvival {
    fn select(&mut self, mut combined: Vec<Individual>, size: usize, rng: &mut ChaCha8Rng) -> Vec<Individual> {
        let fronts = fast_nondominated_sort(&mut combined);
        for ind in combined.iter_mut() {
            ind.crowding = 0.0;
        }
        let mut keep: Vec<usize> = Vec::with_capacity(size);
        let mut last: &[usize] = &[];
        for front in &fronts {
            if keep.len() + front.len() <= size {
                keep.extend_from_slice(front);
                if keep.len() == size {
                    break;
                }
            } else {
                last = front;
                break;
            }
        }
        if keep.len() == size || last.is_empty() {
            return take_indices(combined, &keep);
        }

        let candidates: Vec<usize> = keep.iter().chain(last).copied().collect();
        let points: Vec<[f64; 2]> = candidates.iter().map(|&i| combined[i].objectives.objectives()).collect();
        let normalized = normalize(&points);
        let links: Vec<(usize, f64)> = normalized.iter().map(|p| associate(p, &self.refs)).collect();

        let mut niche = vec![0usize; self.refs.len()];
        for link in &links[..keep.len()] {
            niche[link.0] += 1;
        }
        // (position in `last`, reference, distance) for unplaced members.
        let mut pending: Vec<(usize, usize, f64)> = links[keep.len()..]
            .iter()
            .enumerate()
            .map(|(k, &(r, d))| (k, r, d))
            .collect();
        let mut open: Vec<bool> = vec![true; self.refs.len()];

        while keep.len() < size {
            let min_count = (0..self.refs.len())
                .filter(|&j| open[j])
                .map(|j| niche[j])
                .min()
                .expect("some reference stays open while members are pending");
            let ties: Vec<usize> = (0..self.refs.len()).filter(|&j| open[j] && niche[j] == min_count).collect();
            let j = *ties.choose(rng).expect("nonempty");
            let members: Vec<usize> = (0..pending.len()).filter(|&p| pending[p].1 == j).collect();
            if members.is_empty() {
                open[j] = false;
                continue;
            }
            let pick = if niche[j] == 0 {
                *members
                    .iter()
                    .min_by(|&&a, &&b| pending[a].2.total_cmp(&pending[b].2))
                    .expect("nonempty")
            } else {
                *members.choose(rng).expect("nonempty")
            };
            let (pos, _, _) = pending.swap_remove(pick);
            keep.push(last[pos]);
            niche[j] += 1;
        }
        take_indices(combined, &keep)
    }
}

pub fn run_nsga3(scenario: &Scenario, cfg: &SolverConfig) -> Result<SolverRun, SolverError> {
    cfg.validate()?;
    if cfg.algorithm != Algorithm::Nsga3 {
        return Err(SolverError::WrongAlgorithm { expected: Algorithm::Nsga3, found: cfg.algorithm });
    }
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut eval = Evaluator::new(scenario, cfg.max_evaluations);
    let mut survival = NichingSurvival::new(cfg.population_size);
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
        algorithm: Algorithm::Nsga3,
        seed: cfg.seed,
        front: final_front(&pop),
        evaluations: eval.used(),
        generations,
        connected_runs: 1,
        elapsed: started.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_point_counts() {
        assert_eq!(das_dennis_2d(divisions_for(2)), vec![[0.0, 1.0], [1.0, 0.0]]);
        assert_eq!(das_dennis_2d(divisions_for(100)).len(), 100);
        for p in das_dennis_2d(7) {
            assert!((p[0] + p[1] - 1.0).abs() < 1e-12);
        }
        assert_eq!(NichingSurvival::new(2).reference_points().len(), 2);
    }

    #[test]
    fn normalization_maps_extremes_to_unit_intercepts() {
        let n = normalize(&[[-4.0, 10.0], [-2.0, 5.0], [0.0, 0.0]]);
        assert!((n[0][0] - 0.0).abs() < 1e-9 && (n[0][1] - 1.0).abs() < 1e-6);
        assert!((n[2][0] - 1.0).abs() < 1e-6 && n[2][1].abs() < 1e-9);
    }

    #[test]
    fn normalization_degenerate_set() {
        let n = normalize(&[[1.0, 1.0], [1.0, 1.0]]);
        assert_eq!(n, vec![[0.0, 0.0], [0.0, 0.0]]);
    }

    #[test]
    fn association_picks_nearest_direction() {
        let refs = das_dennis_2d(2);
        assert_eq!(associate(&[0.0, 1.0], &refs).0, 0);
        assert_eq!(associate(&[0.4, 0.4], &refs).0, 1);
        assert_eq!(associate(&[2.0, 0.1], &refs).0, 2);
    }
}
