//! Exact fronts by exhaustive enumeration of all `(N+1)^M` placements.
//!
//! Only `model::evaluate` is shared with the solvers, so the result is an
//! independent ground truth for small instances. Work is split by the first
//! gene across threads; merging is order-independent.

use rayon::prelude::*;
use thiserror::Error;

use crate::model::{evaluate, pareto_dominates, Assignment, FrontMember, ParetoFront, Scenario};

pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    /// `size` is `None` when `(N+1)^M` overflows 128 bits.
    #[error("enumeration of {} assignments exceeds the enumeration cap of {cap}", display_size(.size, .m, .n))]
    ExceedsCap { size: Option<u128>, m: usize, n: usize, cap: u64 },
}

fn display_size(size: &Option<u128>, m: &usize, n: &usize) -> String {
    match size {
        Some(s) => s.to_string(),
        None => format!("{}^{}", n + 1, m),
    }
}

/// `(N+1)^M`, or `None` on overflow.
pub fn search_space_size(scenario: &Scenario) -> Option<u128> {
    let base = scenario.num_nodes() as u128 + 1;
    u32::try_from(scenario.num_vnfs())
        .ok()
        .and_then(|m| base.checked_pow(m))
}

fn check_cap(scenario: &Scenario, cap: u64) -> Result<u64, OracleError> {
    let size = search_space_size(scenario);
    match size {
        Some(s) if s <= u128::from(cap) => Ok(s as u64),
        _ => Err(OracleError::ExceedsCap {
            size,
            m: scenario.num_vnfs(),
            n: scenario.num_nodes(),
            cap,
        }),
    }
}

/// Visits every placement whose first gene is `lead`, in odometer order.
fn for_each_with_lead(scenario: &Scenario, lead: u32, mut visit: impl FnMut(&Assignment)) {
    let m = scenario.num_vnfs();
    let n = scenario.num_nodes() as u32;
    let mut a = Assignment::empty(m);
    a.0[0] = lead;
    loop {
        visit(&a);
        let mut k = m;
        loop {
            if k == 1 {
                return;
            }
            k -= 1;
            if a.0[k] < n {
                a.0[k] += 1;
                break;
            }
            a.0[k] = 0;
        }
    }
}

/// Nondominated insert keeping, per objective vector, the smallest placement.
fn insert(front: &mut Vec<FrontMember>, cand: FrontMember) {
    let p = cand.objectives.objectives();
    for m in front.iter_mut() {
        let q = m.objectives.objectives();
        if q == p {
            if cand.placement < m.placement {
                *m = cand;
            }
            return;
        }
        if pareto_dominates(&q, &p) {
            return;
        }
    }
    front.retain(|m| !pareto_dominates(&p, &m.objectives.objectives()));
    front.push(cand);
}

fn merge(mut a: Vec<FrontMember>, b: Vec<FrontMember>) -> Vec<FrontMember> {
    for m in b {
        insert(&mut a, m);
    }
    a
}

fn sorted(mut members: Vec<FrontMember>) -> ParetoFront {
    members.sort_by(|a, b| a.objectives.lex_cmp(&b.objectives));
    ParetoFront::from_candidates(members)
}

/// The exact Pareto front with one witness placement per point.
pub fn enumerate_front(scenario: &Scenario, cap: u64) -> Result<ParetoFront, OracleError> {
    check_cap(scenario, cap)?;
    let n = scenario.num_nodes() as u32;
    let members = (0..=n)
        .into_par_iter()
        .map(|lead| {
            let mut local = Vec::new();
            for_each_with_lead(scenario, lead, |a| {
                let objectives = evaluate(scenario, a).expect("enumerated placements are valid");
                if objectives.is_feasible() {
                    insert(&mut local, FrontMember { placement: a.clone(), objectives });
                }
            });
            local
        })
        .reduce(Vec::new, merge);
    let front = sorted(members);
    debug_assert!(front_covers_all(scenario, &front));
    Ok(front)
}

fn front_covers_all(scenario: &Scenario, front: &ParetoFront) -> bool {
    if scenario.num_vnfs() > 8 {
        return true;
    }
    let pts = front.points();
    (0..=scenario.num_nodes() as u32).all(|lead| {
        let mut ok = true;
        for_each_with_lead(scenario, lead, |a| {
            let o = evaluate(scenario, a).expect("valid");
            if o.is_feasible() {
                let p = o.objectives();
                ok &= pts.iter().any(|q| *q == p || pareto_dominates(q, &p));
            }
        });
        ok
    })
}

/// Number of placements with zero violation.
pub fn count_feasible(scenario: &Scenario, cap: u64) -> Result<u64, OracleError> {
    check_cap(scenario, cap)?;
    let n = scenario.num_nodes() as u32;
    Ok((0..=n)
        .into_par_iter()
        .map(|lead| {
            let mut count = 0u64;
            for_each_with_lead(scenario, lead, |a| {
                if evaluate(scenario, a).expect("valid").is_feasible() {
                    count += 1;
                }
            });
            count
        })
        .sum())
}
