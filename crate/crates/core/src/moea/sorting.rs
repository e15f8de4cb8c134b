//! Constrained domination, fast nondominated sorting and crowding distance.

use crate::model::{pareto_dominates, Assignment, ObjectiveVector};

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genotype: Assignment,
    pub objectives: ObjectiveVector,
    pub rank: usize,
    pub crowding: f64,
}

impl Individual {
    pub fn new(genotype: Assignment, objectives: ObjectiveVector) -> Self {
        Self {
            genotype,
            objectives,
            rank: 0,
            crowding: 0.0,
        }
    }
}

/// Feasible beats infeasible, lower violation beats higher, and among
/// feasible vectors Pareto dominance on `(neg_deployed, energy)` decides.
pub fn constrained_dominates(a: &ObjectiveVector, b: &ObjectiveVector) -> bool {
    match (a.is_feasible(), b.is_feasible()) {
        (true, false) => true,
        (false, true) => false,
        (false, false) => a.violation < b.violation,
        (true, true) => pareto_dominates(&a.objectives(), &b.objectives()),
    }
}

/// Partitions `pop` into fronts of indices under constrained domination and
/// stores each individual's front number in `rank`.
pub fn fast_nondominated_sort(pop: &mut [Individual]) -> Vec<Vec<usize>> {
    let n = pop.len();
    let mut dominated_by_me: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];
    for p in 0..n {
        for q in (p + 1)..n {
            if constrained_dominates(&pop[p].objectives, &pop[q].objectives) {
                dominated_by_me[p].push(q);
                domination_count[q] += 1;
            } else if constrained_dominates(&pop[q].objectives, &pop[p].objectives) {
                dominated_by_me[q].push(p);
                domination_count[p] += 1;
            }
        }
    }

    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&p| domination_count[p] == 0).collect();
    let mut rank = 0;
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            pop[p].rank = rank;
            for &q in &dominated_by_me[p] {
                domination_count[q] -= 1;
                if domination_count[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
        rank += 1;
    }
    fronts
}

/// Crowding distance of each point within one front.
///
/// Points holding an extreme value on an objective get `+inf`. Others add
/// the normalized gap between the neighbouring distinct values on each
/// objective; objectives with zero range are skipped. Working on distinct
/// values makes the result independent of input order even with ties.
pub fn crowding_distances(points: &[[f64; 2]]) -> Vec<f64> {
    let mut dist = vec![0.0; points.len()];
    if points.is_empty() {
        return dist;
    }
    for k in 0..2 {
        let mut values: Vec<f64> = points.iter().map(|p| p[k]).collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        let (min, max) = (values[0], values[values.len() - 1]);
        let range = max - min;
        if range <= 0.0 {
            continue;
        }
        for (d, p) in dist.iter_mut().zip(points) {
            let v = p[k];
            if v == min || v == max {
                *d = f64::INFINITY;
                continue;
            }
            let pos = values.partition_point(|&x| x < v);
            *d += (values[pos + 1] - values[pos - 1]) / range;
        }
    }
    dist
}

/// Writes crowding distances for the members of `front` into `pop`.
pub fn assign_crowding(pop: &mut [Individual], front: &[usize]) {
    let points: Vec<[f64; 2]> = front.iter().map(|&i| pop[i].objectives.objectives()).collect();
    for (&i, d) in front.iter().zip(crowding_distances(&points)) {
        pop[i].crowding = d;
    }
}
