//! ε-dominance archive.
//!
//! Objective space is cut into boxes of side `epsilons`; the archive keeps at
//! most one representative per box and never holds a member whose box is
//! dominated by another member's box. Within a box, a Pareto-dominating
//! point replaces the incumbent; between mutually nondominated points the
//! one closer to the box's lower corner wins, and the incumbent keeps ties.
//!
//! Infeasible points are only kept while nothing feasible has been offered,
//! and then only the single least-violating one.

use std::collections::HashSet;

use super::sorting::Individual;
use crate::model::pareto_dominates;

pub type BoxIndex = [i64; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Offer {
    Added,
    Replaced,
    Rejected,
}

#[derive(Debug, Clone)]
pub struct EpsilonArchive {
    epsilons: [f64; 2],
    members: Vec<Individual>,
}

fn box_dominates(a: &BoxIndex, b: &BoxIndex) -> bool {
    a[0] <= b[0] && a[1] <= b[1] && a != b
}

impl EpsilonArchive {
    pub fn new(epsilons: [f64; 2]) -> Self {
        assert!(epsilons.iter().all(|e| *e > 0.0), "epsilons must be positive");
        Self {
            epsilons,
            members: Vec::new(),
        }
    }

    pub fn epsilons(&self) -> [f64; 2] {
        self.epsilons
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn box_of(&self, objectives: &[f64; 2]) -> BoxIndex {
        [
            (objectives[0] / self.epsilons[0]).floor() as i64,
            (objectives[1] / self.epsilons[1]).floor() as i64,
        ]
    }

    /// Occupied boxes, counting feasible members only.
    pub fn boxes(&self) -> HashSet<BoxIndex> {
        self.members
            .iter()
            .filter(|m| m.objectives.is_feasible())
            .map(|m| self.box_of(&m.objectives.objectives()))
            .collect()
    }

    fn corner_distance(&self, objectives: &[f64; 2], b: &BoxIndex) -> f64 {
        let d0 = objectives[0] - b[0] as f64 * self.epsilons[0];
        let d1 = objectives[1] - b[1] as f64 * self.epsilons[1];
        d0 * d0 + d1 * d1
    }

    pub fn offer(&mut self, candidate: &Individual) -> Offer {
        if !candidate.objectives.is_feasible() {
            return self.offer_infeasible(candidate);
        }
        if self.members.first().is_some_and(|m| !m.objectives.is_feasible()) {
            self.members.clear();
        }

        let point = candidate.objectives.objectives();
        let cbox = self.box_of(&point);
        let mut same_box = None;
        for (k, m) in self.members.iter().enumerate() {
            let mbox = self.box_of(&m.objectives.objectives());
            if box_dominates(&mbox, &cbox) {
                return Offer::Rejected;
            }
            if mbox == cbox {
                same_box = Some(k);
            }
        }

        if let Some(k) = same_box {
            let incumbent = self.members[k].objectives.objectives();
            let wins = pareto_dominates(&point, &incumbent)
                || (!pareto_dominates(&incumbent, &point)
                    && self.corner_distance(&point, &cbox) < self.corner_distance(&incumbent, &cbox));
            if !wins {
                return Offer::Rejected;
            }
            self.members[k] = candidate.clone();
            // The incumbent's box already dominated nothing else, so no
            // other member can be displaced.
            return Offer::Replaced;
        }

        let eps = self.epsilons;
        self.members.retain(|m| {
            let p = m.objectives.objectives();
            let mbox = [(p[0] / eps[0]).floor() as i64, (p[1] / eps[1]).floor() as i64];
            !box_dominates(&cbox, &mbox)
        });
        self.members.push(candidate.clone());
        Offer::Added
    }

    fn offer_infeasible(&mut self, candidate: &Individual) -> Offer {
        match self.members.first() {
            None => {
                self.members.push(candidate.clone());
                Offer::Added
            }
            Some(m) if !m.objectives.is_feasible() && candidate.objectives.violation < m.objectives.violation => {
                self.members[0] = candidate.clone();
                Offer::Replaced
            }
            Some(_) => Offer::Rejected,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Assignment, ObjectiveVector};

    fn ind(neg: f64, energy: f64, violation: f64) -> Individual {
        Individual::new(
            Assignment(vec![]),
            ObjectiveVector { neg_deployed: neg, energy, violation },
        )
    }

    #[test]
    fn box_index_floors() {
        let a = EpsilonArchive::new([1.0, 0.5]);
        assert_eq!(a.box_of(&[-2.0, 2.5]), [-2, 5]);
        assert_eq!(a.box_of(&[-0.5, 0.49]), [-1, 0]);
    }

    #[test]
    fn t1_front_occupies_three_boxes() {
        let mut a = EpsilonArchive::new([1.0, 0.05]);
        for (n, e) in [(0.0, 0.0), (-1.0, 1.0), (-2.0, 2.5), (-2.0, 5.0), (-1.0, 3.0)] {
            a.offer(&ind(n, e, 0.0));
        }
        let mut pts: Vec<_> = a.members().iter().map(|m| m.objectives.objectives()).collect();
        pts.sort_by(|x, y| x[0].total_cmp(&y[0]));
        assert_eq!(pts, vec![[-2.0, 2.5], [-1.0, 1.0], [0.0, 0.0]]);
    }

    #[test]
    fn same_box_keeps_dominant_or_closer() {
        let mut a = EpsilonArchive::new([1.0, 1.0]);
        assert_eq!(a.offer(&ind(0.5, 0.6, 0.0)), Offer::Added);
        // Dominates the incumbent.
        assert_eq!(a.offer(&ind(0.4, 0.6, 0.0)), Offer::Replaced);
        // Dominated by the incumbent.
        assert_eq!(a.offer(&ind(0.4, 0.7, 0.0)), Offer::Rejected);
        // Nondominated but farther from the corner (0,0).
        assert_eq!(a.offer(&ind(0.9, 0.1, 0.0)), Offer::Rejected);
        // Nondominated and closer.
        assert_eq!(a.offer(&ind(0.1, 0.65, 0.0)), Offer::Replaced);
        // Equal point: incumbent keeps the tie.
        assert_eq!(a.offer(&ind(0.1, 0.65, 0.0)), Offer::Rejected);
        assert_eq!(a.len(), 1);
    }

    #[test]
    fn box_dominated_candidates_rejected_and_dominated_members_removed() {
        let mut a = EpsilonArchive::new([1.0, 1.0]);
        a.offer(&ind(2.5, 0.5, 0.0));
        a.offer(&ind(0.5, 2.5, 0.0));
        assert_eq!(a.len(), 2);
        assert_eq!(a.offer(&ind(2.5, 2.5, 0.0)), Offer::Rejected);
        assert_eq!(a.offer(&ind(0.5, 0.5, 0.0)), Offer::Added);
        assert_eq!(a.len(), 1);
    }

    #[test]
    fn infeasible_handling() {
        let mut a = EpsilonArchive::new([1.0, 1.0]);
        assert_eq!(a.offer(&ind(-3.0, 1.0, 2.0)), Offer::Added);
        assert_eq!(a.offer(&ind(-3.0, 1.0, 1.0)), Offer::Replaced);
        assert_eq!(a.offer(&ind(-3.0, 1.0, 1.5)), Offer::Rejected);
        assert_eq!(a.offer(&ind(0.0, 0.0, 0.0)), Offer::Added);
        assert_eq!(a.len(), 1);
        assert!(a.members()[0].objectives.is_feasible());
        assert_eq!(a.offer(&ind(-3.0, 1.0, 0.1)), Offer::Rejected);
        assert!(a.boxes().contains(&[0, 0]));
    }
}
