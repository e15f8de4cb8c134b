//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.
//!
//! cargo test -p vnfplace-cli --test acceptance

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vnfplace::metrics::{additive_epsilon, hypervolume, is_mutually_nondominated, ReferencePoint};
use vnfplace::model::{
    dimensions_of, evaluate, expand_to_matrix, pareto_dominates, Assignment, NodeSpec, ObjectiveVector, Scenario,
    VnfSpec,
};
use vnfplace::moea::{
    constrained_dominates, fast_nondominated_sort, solve, Algorithm, EpsilonArchive, Individual, SolverConfig,
};
use vnfplace::oracle::{enumerate_front, DEFAULT_CAP};
use vnfplace::scenario::{generate, save_scenario, GeneratorConfig};
use vnfplace_cli::commands::{compare_runs, SolverArgs};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

fn t1() -> Scenario {
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

/// Capacity rows on the expanded 0/1 matrix, written out term by term.
fn literal_capacity_check(s: &Scenario, a: &Assignment) -> bool {
    let x = expand_to_matrix(a, s.num_nodes());
    let single = x.iter().all(|row| row.iter().map(|&c| u32::from(c)).sum::<u32>() <= 1);
    single
        && (0..s.num_nodes()).all(|j| {
            let (mut cores, mut memory, mut storage) = (0u64, 0.0, 0.0);
            for (i, v) in s.vnfs().iter().enumerate() {
                cores += u64::from(x[i][j]) * u64::from(v.cores);
                memory += f64::from(x[i][j]) * v.memory;
                storage += f64::from(x[i][j]) * v.storage;
            }
            let node = &s.nodes()[j];
            cores <= u64::from(node.cores) && memory <= node.memory && storage <= node.storage
        })
}

fn brute_force_ranks(pop: &[Individual]) -> Vec<usize> {
    let mut rank = vec![usize::MAX; pop.len()];
    let mut r = 0;
    while rank.contains(&usize::MAX) {
        let layer: Vec<usize> = (0..pop.len())
            .filter(|&i| rank[i] == usize::MAX)
            .filter(|&i| {
                !(0..pop.len())
                    .any(|j| rank[j] == usize::MAX && constrained_dominates(&pop[j].objectives, &pop[i].objectives))
            })
            .collect();
        for i in layer {
            rank[i] = r;
        }
        r += 1;
    }
    rank
}

fn random_assignment(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Assignment {
    Assignment((0..m).map(|_| rng.gen_range(0..=n as u32)).collect())
}

/// Capacities small enough that random assignments often overshoot.
fn tight(m: usize, n: usize, seed: u64) -> GeneratorConfig {
    let mut cfg = GeneratorConfig::new(m, n, seed);
    cfg.core_capacity = 2..=16;
    cfg.memory_capacity = 4.0..=40.0;
    cfg.storage_capacity = 20.0..=500.0;
    cfg
}

fn counting() -> Outcome {
    let s = generate(&GeneratorConfig::new(100, 20, 7)).unwrap();
    let started = Instant::now();
    let d = dimensions_of(&s);
    let took = started.elapsed();
    let pass = d.decision_variables == 2000 && d.constraints == 160 && took < Duration::from_millis(1);
    Outcome::new(pass, format!("({}, {}) in {took:?}", d.decision_variables, d.constraints))
}

fn oracle_equivalence() -> Outcome {
    let started = Instant::now();
    let (mut exact, mut hv_ok, mut failures) = (0, 0, Vec::new());
    let total = 50;
    for seed in 0..total {
        let m = 2 + (seed % 5) as usize;
        let n = 2 + ((seed / 5) % 2) as usize;
        let s = generate(&GeneratorConfig::new(m, n, 1000 + seed)).unwrap();
        let truth = enumerate_front(&s, DEFAULT_CAP).unwrap().points();
        let found = solve(&s, &SolverConfig::new(Algorithm::EpsNsga2, seed)).unwrap().front.points();
        if additive_epsilon(&found, &truth).unwrap() == 0.0 {
            exact += 1;
        } else {
            failures.push(format!("{m}x{n}#{seed}"));
        }
        let reference = ReferencePoint::from_points(truth.iter()).unwrap();
        if hypervolume(&found, reference).value >= 0.99 * hypervolume(&truth, reference).value {
            hv_ok += 1;
        }
    }
    let took = started.elapsed();
    let pass = exact * 100 >= 95 * total && hv_ok == total && took < Duration::from_secs(300);
    let mut detail = format!("exact {exact}/{total}, hypervolume >= 0.99 in {hv_ok}/{total}, {took:.2?}");
    if !failures.is_empty() {
        detail += &format!(", inexact: {}", failures.join(" "));
    }
    Outcome::new(pass, detail)
}

fn t1_exactness() -> Outcome {
    let expected = vec![[-2.0, 2.5], [-1.0, 1.0], [0.0, 0.0]];
    let s = t1();
    let mut bad = Vec::new();
    let mut worst_hv_error: f64 = 0.0;
    for alg in Algorithm::ALL {
        for seed in 0..20 {
            let pts = solve(&s, &SolverConfig::new(alg, seed)).unwrap().front.points();
            if pts != expected {
                bad.push(format!("{alg}/{seed}"));
            }
            let hv = hypervolume(&pts, ReferencePoint([1.0, 6.0])).value;
            worst_hv_error = worst_hv_error.max((hv - 14.5).abs());
        }
    }
    let pass = bad.is_empty() && worst_hv_error <= 1e-9;
    let mut detail = format!("60 runs, max |hv - 14.5| = {worst_hv_error:e}");
    if !bad.is_empty() {
        detail += &format!(", wrong set: {}", bad.join(" "));
    }
    Outcome::new(pass, detail)
}

fn case_study_protocol() -> Outcome {
    let started = Instant::now();
    let s = generate(&GeneratorConfig::new(100, 20, 7)).unwrap();
    let seeds: Vec<u64> = (0..20).collect();
    let c = match compare_runs(&s, &SolverArgs::default(), &seeds, None) {
        Ok(c) => c,
        Err(e) => return Outcome::new(false, format!("compare failed: {e}")),
    };
    let took = started.elapsed();
    let mean = |alg: Algorithm| {
        c.aggregates.iter().find(|a| a.algorithm == alg.name()).map_or(f64::NAN, |a| a.hypervolume_mean)
    };
    let (eps, nsga3) = (mean(Algorithm::EpsNsga2), mean(Algorithm::Nsga3));
    let fronts_ok = c.runs.len() == 60
        && c.runs.iter().all(|r| {
            r.front.members().iter().all(|p| p.objectives.is_feasible()
                && evaluate(&s, &p.placement).map(|o| o == p.objectives).unwrap_or(false))
                && is_mutually_nondominated(&r.front.points())
        });
    let pass = eps >= nsga3 && fronts_ok && took < Duration::from_secs(600);
    Outcome::new(
        pass,
        format!(
            "mean hv eps-nsga2 {eps:.3} vs nsga3 {nsga3:.3}, {} fronts valid: {fronts_ok}, {took:.2?}",
            c.runs.len()
        ),
    )
}

fn random_objectives(rng: &mut ChaCha8Rng) -> ObjectiveVector {
    ObjectiveVector {
        neg_deployed: -(rng.gen_range(0..10) as f64),
        energy: rng.gen_range(0..60) as f64 * 0.25,
        violation: if rng.gen_bool(0.2) { rng.gen_range(1..6) as f64 * 0.5 } else { 0.0 },
    }
}

fn feasibility_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut violations = 0;

    let mut checked = 0;
    for seed in 0..20 {
        let m = rng.gen_range(1..=12);
        let n = rng.gen_range(1..=5);
        let cfg = if seed % 2 == 0 { tight(m, n, seed) } else { GeneratorConfig::new(m, n, seed) };
        let s = generate(&cfg).unwrap();
        for _ in 0..1000 {
            let a = random_assignment(&mut rng, m, n);
            let o = evaluate(&s, &a).unwrap();
            if o.is_feasible() != literal_capacity_check(&s, &a) {
                violations += 1;
            }
            checked += 1;
        }
    }

    for _ in 0..100 {
        let size = rng.gen_range(1..=200);
        let mut pop: Vec<Individual> =
            (0..size).map(|_| Individual::new(Assignment(vec![]), random_objectives(&mut rng))).collect();
        let expected = brute_force_ranks(&pop);
        fast_nondominated_sort(&mut pop);
        if pop.iter().map(|i| i.rank).collect::<Vec<_>>() != expected {
            violations += 1;
        }
    }

    let mut archive = EpsilonArchive::new([1.0, 0.05]);
    for _ in 0..10_000 {
        // Energy grows with deployment so offers trade off and the archive fills.
        let deployed = rng.gen_range(0..30);
        let o = ObjectiveVector {
            neg_deployed: -f64::from(deployed),
            energy: f64::from(deployed) * 2.5 + rng.gen_range(0.0..4.0),
            violation: if rng.gen_bool(0.05) { 1.0 } else { 0.0 },
        };
        archive.offer(&Individual::new(Assignment(vec![]), o));
    }
    let boxes: Vec<[i64; 2]> =
        archive.members().iter().map(|m| archive.box_of(&m.objectives.objectives())).collect();
    for (i, a) in boxes.iter().enumerate() {
        for b in &boxes[i + 1..] {
            if a == b || (a[0] <= b[0] && a[1] <= b[1]) || (b[0] <= a[0] && b[1] <= a[1]) {
                violations += 1;
            }
        }
    }

    Outcome::new(
        violations == 0,
        format!("{checked} assignments, 100 sorts, archive of {} after 10000 offers, {violations} violations", boxes.len()),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let scenario_path = dir.path().join("scenario.json");
    save_scenario(&generate(&GeneratorConfig::new(30, 6, 11)).unwrap(), &scenario_path).unwrap();
    let mut mismatches = Vec::new();
    for alg in Algorithm::ALL {
        let outputs: Vec<Vec<u8>> = (0..3)
            .map(|k| {
                let out = dir.path().join(format!("{alg}-{k}.json"));
                let output = Command::new(env!("CARGO_BIN_EXE_vnfplace"))
                    .args(["solve", "--algorithm", alg.name(), "--seed", "42", "--evaluations", "4000"])
                    .arg("--scenario")
                    .arg(&scenario_path)
                    .arg("--out")
                    .arg(&out)
                    .output()
                    .unwrap();
                assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
                std::fs::read(out.with_extension("csv")).unwrap()
            })
            .collect();
        if outputs.windows(2).any(|w| w[0] != w[1]) || outputs[0].is_empty() {
            mismatches.push(alg.name());
        }
    }
    Outcome::new(mismatches.is_empty(), format!("3 drivers x 3 repeats, differing: {mismatches:?}"))
}

fn monotonicity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut violations = 0;

    for _ in 0..200 {
        let mut front: Vec<[f64; 2]> = Vec::new();
        for _ in 0..rng.gen_range(1..15) {
            let p = [-(rng.gen_range(0..20) as f64), rng.gen_range(0.0..50.0)];
            if !front.iter().any(|q| pareto_dominates(q, &p) || *q == p) {
                front.retain(|q| !pareto_dominates(&p, q));
                front.push(p);
            }
        }
        let reference = ReferencePoint([1.0, 60.0]);
        let before = hypervolume(&front, reference).value;
        let candidate = [-(rng.gen_range(0..20) as f64), rng.gen_range(0.0..50.0)];
        if front.iter().any(|q| pareto_dominates(q, &candidate)) {
            continue;
        }
        front.push(candidate);
        if hypervolume(&front, reference).value < before {
            violations += 1;
        }
    }

    let mut perturbations = 0;
    let mut seed = 0;
    while perturbations < 10_000 {
        let m = rng.gen_range(1..=15);
        let n = rng.gen_range(1..=6);
        let s = generate(&tight(m, n, seed)).unwrap();
        seed += 1;
        for _ in 0..100 {
            let mut a = random_assignment(&mut rng, m, n);
            let i = rng.gen_range(0..m);
            a.0[i] = 0;
            let k = rng.gen_range(1..=n as u32);
            let before = evaluate(&s, &a).unwrap();
            a.0[i] = k;
            let after = evaluate(&s, &a).unwrap();
            let e = s.energy()[i][k as usize - 1];
            let ok = after.deployed() == before.deployed() + 1
                && (after.energy - before.energy - e).abs() <= 1e-9
                && after.violation >= before.violation;
            if !ok {
                violations += 1;
            }
            perturbations += 1;
        }
    }

    Outcome::new(violations == 0, format!("200 hypervolume trials, {perturbations} perturbations, {violations} violations"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 counting exactness", counting),
        ("2 oracle equivalence", oracle_equivalence),
        ("3 T1 exactness", t1_exactness),
        ("4 case-study protocol", case_study_protocol),
        ("5 feasibility invariants", feasibility_invariants),
        ("6 determinism", determinism),
        ("7 monotonicity", monotonicity),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let o = check();
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
