#![allow(dead_code)]

use vnfplace::model::{expand_to_matrix, Assignment, NodeSpec, Scenario, VnfSpec};
use vnfplace::moea::{constrained_dominates, Individual};

/// Two VNFs on two identical nodes; exact front {(0,0), (-1,1.0), (-2,2.5)}.
pub fn t1() -> Scenario {
    let node = NodeSpec { cores: 4, memory: 8.0, storage: 50.0 };
    Scenario::new(
        vec![
            VnfSpec { cores: 2, memory: 4.0, storage: 20.0 },
            VnfSpec { cores: 4, memory: 8.0, storage: 40.0 },
        ],
        vec![node, node],
        vec![vec![1.0, 2.0], vec![3.0, 1.5]],
    )
    .unwrap()
}

/// Capacity rows checked literally on the binary matrix: for each node,
/// Σ_i x[i][j]·demand_i <= capacity_j for cores, memory and storage.
pub fn literal_capacity_check(s: &Scenario, a: &Assignment) -> bool {
    let x = expand_to_matrix(a, s.num_nodes());
    (0..s.num_nodes()).all(|j| {
        let mut cores = 0u64;
        let mut memory = 0.0;
        let mut storage = 0.0;
        for (i, v) in s.vnfs().iter().enumerate() {
            cores += u64::from(x[i][j]) * u64::from(v.cores);
            memory += f64::from(x[i][j]) * v.memory;
            storage += f64::from(x[i][j]) * v.storage;
        }
        let node = &s.nodes()[j];
        cores <= u64::from(node.cores) && memory <= node.memory && storage <= node.storage
    })
}

/// Rank by repeated peeling: rank r = undominated once all ranks < r are removed.
pub fn brute_force_ranks(pop: &[Individual]) -> Vec<usize> {
    let mut rank = vec![usize::MAX; pop.len()];
    let mut r = 0;
    while rank.contains(&usize::MAX) {
        let layer: Vec<usize> = (0..pop.len())
            .filter(|&i| rank[i] == usize::MAX)
            .filter(|&i| {
                !(0..pop.len()).any(|j| {
                    rank[j] == usize::MAX && constrained_dominates(&pop[j].objectives, &pop[i].objectives)
                })
            })
            .collect();
        for i in layer {
            rank[i] = r;
        }
        r += 1;
    }
    rank
}

/// Every assignment of `m` genes over `0..=n`.
pub fn all_assignments(m: usize, n: usize) -> Vec<Assignment> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=n as u32).map(move |g| {
                    let mut p = prefix.clone();
                    p.push(g);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(Assignment).collect()
}
