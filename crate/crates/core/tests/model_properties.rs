mod common;

use common::{all_assignments, literal_capacity_check};
use proptest::prelude::*;
use vnfplace::model::{compress_matrix, evaluate, expand_to_matrix, violation_of, Assignment};
use vnfplace::scenario::{generate, scenario_from_json, scenario_to_json, GeneratorConfig};

/// Generator config with capacities tight enough that constraints bind.
fn tight(m: usize, n: usize, seed: u64) -> GeneratorConfig {
    let mut cfg = GeneratorConfig::new(m, n, seed);
    cfg.core_capacity = 2..=12;
    cfg.memory_capacity = 4.0..=30.0;
    cfg.storage_capacity = 20.0..=400.0;
    cfg
}

#[test]
fn violation_zero_iff_literal_check_exhaustive() {
    for seed in 0..20 {
        for m in 1..=5 {
            for n in 1..=3 {
                let s = generate(&tight(m, n, seed)).unwrap();
                for a in all_assignments(m, n) {
                    let v = violation_of(&s, &a).unwrap();
                    assert_eq!(v == 0.0, literal_capacity_check(&s, &a), "seed {seed} {a:?}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matrix_round_trip(genes in prop::collection::vec(0u32..5, 1..30)) {
        let a = Assignment(genes);
        let x = expand_to_matrix(&a, 4);
        prop_assert!(x.iter().all(|row| row.iter().map(|&c| c as u32).sum::<u32>() <= 1));
        prop_assert_eq!(compress_matrix(&x, 4).unwrap(), a);
    }

    #[test]
    fn objective_bounds(seed in any::<u64>(), m in 1usize..15, n in 1usize..6, raw in prop::collection::vec(any::<u32>(), 15)) {
        let s = generate(&tight(m, n, seed)).unwrap();
        let a = Assignment(raw[..m].iter().map(|g| g % (n as u32 + 1)).collect());
        let o = evaluate(&s, &a).unwrap();
        prop_assert!(o.neg_deployed <= 0.0 && -o.neg_deployed <= m as f64);
        prop_assert!(o.energy >= 0.0 && o.energy <= s.max_energy() + 1e-9);
        prop_assert!(o.violation >= 0.0);
        prop_assert_eq!(evaluate(&s, &a).unwrap(), o);
    }

    #[test]
    fn scenario_json_round_trip(seed in any::<u64>(), m in 1usize..20, n in 1usize..8) {
        let s = generate(&GeneratorConfig::new(m, n, seed)).unwrap();
        let back = scenario_from_json(&scenario_to_json(&s), std::path::Path::new("mem")).unwrap();
        for (r1, r2) in s.energy().iter().zip(back.energy()) {
            for (a, b) in r1.iter().zip(r2) {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
        }
        prop_assert_eq!(back, s);
    }
}
