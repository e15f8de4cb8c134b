//! Front-quality indicators for two minimization objectives.

use thiserror::Error;

use crate::model::pareto_dominates;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("{0} front is empty")]
    EmptyFront(&'static str),
}

/// Point that every compared front point should strictly dominate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferencePoint(pub [f64; 2]);

impl ReferencePoint {
    /// Nadir of all given points pushed out by 10% of each axis range, or by
    /// 1.0 on axes with zero range. `None` when there are no points.
    pub fn from_points<'a, I>(points: I) -> Option<Self>
    where
        I: IntoIterator<Item = &'a [f64; 2]>,
    {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        let mut any = false;
        for p in points {
            any = true;
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        any.then(|| {
            Self([0, 1].map(|k| {
                let range = hi[k] - lo[k];
                hi[k] + if range > 0.0 { 0.1 * range } else { 1.0 }
            }))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypervolumeStatus {
    Ok,
    /// Nothing to measure; value is 0.
    EmptyFront,
    /// No point strictly dominates the reference; value is 0.
    ReferenceNotDominated,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hypervolume {
    pub value: f64,
    pub status: HypervolumeStatus,
}

/// Exact 2-D dominated area, by a sweep over the first objective. Points
/// not strictly dominating `reference` contribute nothing; dominated points
/// are absorbed by the sweep.
pub fn hypervolume(points: &[[f64; 2]], reference: ReferencePoint) -> Hypervolume {
    if points.is_empty() {
        return Hypervolume { value: 0.0, status: HypervolumeStatus::EmptyFront };
    }
    let r = reference.0;
    let mut inside: Vec<[f64; 2]> = points.iter().copied().filter(|p| p[0] < r[0] && p[1] < r[1]).collect();
    if inside.is_empty() {
        return Hypervolume { value: 0.0, status: HypervolumeStatus::ReferenceNotDominated };
    }
    inside.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut ceiling = r[1];
    let mut value = 0.0;
    for p in inside {
        if p[1] < ceiling {
            value += (r[0] - p[0]) * (ceiling - p[1]);
            ceiling = p[1];
        }
    }
    Hypervolume { value, status: HypervolumeStatus::Ok }
}

/// Smallest `ε >= 0` such that every reference point is weakly dominated by
/// some approximation point shifted by `-ε` on both axes.
pub fn additive_epsilon(approx: &[[f64; 2]], reference: &[[f64; 2]]) -> Result<f64, MetricError> {
    if approx.is_empty() {
        return Err(MetricError::EmptyFront("approximation"));
    }
    if reference.is_empty() {
        return Err(MetricError::EmptyFront("reference"));
    }
    let eps = reference
        .iter()
        .map(|r| {
            approx
                .iter()
                .map(|a| (a[0] - r[0]).max(a[1] - r[1]))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(eps.max(0.0))
}

/// Mean Euclidean distance from each approximation point to its nearest
/// reference point.
pub fn generational_distance(approx: &[[f64; 2]], reference: &[[f64; 2]]) -> Result<f64, MetricError> {
    if approx.is_empty() {
        return Err(MetricError::EmptyFront("approximation"));
    }
    if reference.is_empty() {
        return Err(MetricError::EmptyFront("reference"));
    }
    let total: f64 = approx
        .iter()
        .map(|a| {
            reference
                .iter()
                .map(|r| ((a[0] - r[0]).powi(2) + (a[1] - r[1]).powi(2)).sqrt())
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    Ok(total / approx.len() as f64)
}

/// True iff every point of `reference` is equalled or dominated by a point of `approx`.
pub fn weakly_dominates_front(approx: &[[f64; 2]], reference: &[[f64; 2]]) -> bool {
    reference
        .iter()
        .all(|r| approx.iter().any(|a| a == r || pareto_dominates(a, r)))
}

/// True iff no point of `front` Pareto-dominates another.
pub fn is_mutually_nondominated(front: &[[f64; 2]]) -> bool {
    front
        .iter()
        .all(|p| front.iter().all(|q| !pareto_dominates(q, p)))
}
