use rand::Rng;

use crate::model::Assignment;

/// Uniform crossover with probability `crossover_rate`, then independent
/// per-gene reset to a uniform draw from `0..=n` with probability
/// `mutation_rate`.
pub fn variation<R: Rng + ?Sized>(
    parents: (&Assignment, &Assignment),
    n: usize,
    crossover_rate: f64,
    mutation_rate: f64,
    rng: &mut R,
) -> (Assignment, Assignment) {
    let (p1, p2) = parents;
    debug_assert_eq!(p1.len(), p2.len());
    let mut c1 = p1.clone();
    let mut c2 = p2.clone();
    if rng.gen_bool(crossover_rate) {
        for (g1, g2) in c1.0.iter_mut().zip(c2.0.iter_mut()) {
            if rng.gen_bool(0.5) {
                std::mem::swap(g1, g2);
            }
        }
    }
    mutate(&mut c1, n, mutation_rate, rng);
    mutate(&mut c2, n, mutation_rate, rng);
    (c1, c2)
}

pub fn mutate<R: Rng + ?Sized>(a: &mut Assignment, n: usize, rate: f64, rng: &mut R) {
    for g in a.0.iter_mut() {
        if rng.gen_bool(rate) {
            *g = rng.gen_range(0..=n as u32);
        }
    }
}

pub fn random_assignment<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Assignment {
    Assignment((0..m).map(|_| rng.gen_range(0..=n as u32)).collect())
}
