//! Subcommand implementations. Each returns the text it would print so the
//! binary and the tests share one code path.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use vnfplace::metrics::{hypervolume, ReferencePoint};
use vnfplace::model::{dimensions_of, Scenario};
use vnfplace::moea::{solve, Algorithm, SolverConfig, SolverRun};
use vnfplace::oracle::{enumerate_front, DEFAULT_CAP};
use vnfplace::scenario::{generate, load_scenario, save_scenario, GeneratorConfig};

use crate::error::CliError;
use crate::report::{
    front_csv, front_rows, to_csv, write_file, AggregateRow, PlotRow, RunReport, RunRow, SweepRow,
};

#[derive(Debug, Parser)]
#[command(name = "vnfplace", version, about = "Energy-aware VNF placement across multi-domain SDN nodes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded random scenario.
    Generate(GenerateArgs),
    /// Run one solver on a scenario.
    Solve(SolveArgs),
    /// Run all three solvers over many seeds and aggregate.
    Compare(CompareArgs),
    /// Enumerate the exact front of a small scenario.
    Oracle(OracleArgs),
    /// Generate and solve a list of (VNFs, nodes) sizes.
    Sweep(SweepArgs),
}

/// `LO..HI` or `LO-HI` inclusive range.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeArg<T>(pub RangeInclusive<T>);

impl<T: FromStr + PartialOrd + Copy> FromStr for RangeArg<T> {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s
            .split_once("..")
            .or_else(|| s.split_once('-'))
            .ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
        let parse = |x: &str| x.trim().parse::<T>().map_err(|_| format!("bad bound {x:?} in {s:?}"));
        let (lo, hi) = (parse(lo)?, parse(hi)?);
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Self(lo..=hi))
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub vnfs: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub nodes: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub core_demand: Option<RangeArg<u32>>,
    #[arg(long)]
    pub memory_demand: Option<RangeArg<f64>>,
    #[arg(long)]
    pub storage_demand: Option<RangeArg<f64>>,
    #[arg(long)]
    pub energy: Option<RangeArg<f64>>,
    #[arg(long)]
    pub core_capacity: Option<RangeArg<u32>>,
    #[arg(long)]
    pub memory_capacity: Option<RangeArg<f64>>,
    #[arg(long)]
    pub storage_capacity: Option<RangeArg<f64>>,
    #[arg(long)]
    pub out: PathBuf,
}

impl GenerateArgs {
    pub fn config(&self) -> GeneratorConfig {
        let mut cfg = GeneratorConfig::new(self.vnfs as usize, self.nodes as usize, self.seed);
        if let Some(r) = &self.core_demand {
            cfg.core_demand = r.0.clone();
        }
        if let Some(r) = &self.memory_demand {
            cfg.memory_demand = r.0.clone();
        }
        if let Some(r) = &self.storage_demand {
            cfg.storage_demand = r.0.clone();
        }
        if let Some(r) = &self.energy {
            cfg.energy = r.0.clone();
        }
        if let Some(r) = &self.core_capacity {
            cfg.core_capacity = r.0.clone();
        }
        if let Some(r) = &self.memory_capacity {
            cfg.memory_capacity = r.0.clone();
        }
        if let Some(r) = &self.storage_capacity {
            cfg.storage_capacity = r.0.clone();
        }
        cfg
    }
}

/// Solver knobs shared by `solve`, `compare` and `sweep`.
#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    #[arg(long, default_value_t = 10_000)]
    pub evaluations: u64,
    #[arg(long, default_value_t = 100)]
    pub population: usize,
    #[arg(long, default_value_t = 0.9)]
    pub crossover: f64,
    /// Per-gene mutation probability [default: 1/M].
    #[arg(long)]
    pub mutation: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub epsilon_deployed: f64,
    #[arg(long, default_value_t = 0.05)]
    pub epsilon_energy: f64,
}

impl SolverArgs {
    pub fn config(&self, algorithm: Algorithm, seed: u64) -> Result<SolverConfig, CliError> {
        let mut cfg = SolverConfig::new(algorithm, seed);
        cfg.max_evaluations = self.evaluations;
        cfg.population_size = self.population;
        cfg.crossover_rate = self.crossover;
        cfg.mutation_rate = self.mutation;
        cfg.epsilons = [self.epsilon_deployed, self.epsilon_energy];
        cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(cfg)
    }
}

impl Default for SolverArgs {
    fn default() -> Self {
        Self {
            evaluations: 10_000,
            population: 100,
            crossover: 0.9,
            mutation: None,
            epsilon_deployed: 1.0,
            epsilon_energy: 0.05,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long, value_parser = parse_algorithm)]
    pub algorithm: Algorithm,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Report JSON path.
    #[arg(long)]
    pub out: PathBuf,
    /// Front CSV path [default: the report path with a .csv extension].
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long, default_value_t = 20)]
    pub seeds: u64,
    /// First seed; runs use seeds `first_seed..first_seed + seeds`.
    #[arg(long, default_value_t = 0)]
    pub first_seed: u64,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Parallel runs [default: all cores].
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Comma-separated `MxN` sizes, e.g. `10x5,100x20`.
    #[arg(long, value_parser = parse_point, value_delimiter = ',', required = true)]
    pub points: Vec<(usize, usize)>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: vnfplace::moea::ConfigError| e.0)
}

fn parse_point(s: &str) -> Result<(usize, usize), String> {
    let (m, n) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected MxN, got {s:?}"))?;
    let parse = |x: &str| match x.trim().parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(format!("bad size {x:?} in {s:?}")),
    };
    Ok((parse(m)?, parse(n)?))
}

pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Generate(a) => cmd_generate(&a),
        Command::Solve(a) => cmd_solve(&a),
        Command::Compare(a) => cmd_compare(&a).map(|c| c.summary_text()),
        Command::Oracle(a) => cmd_oracle(&a),
        Command::Sweep(a) => cmd_sweep(&a),
    }
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<String, CliError> {
    let scenario = generate(&args.config())?;
    save_scenario(&scenario, &args.out)?;
    let dims = dimensions_of(&scenario);
    Ok(format!(
        "decision variables: {}, constraints: {}\n",
        dims.decision_variables, dims.constraints
    ))
}

pub fn cmd_solve(args: &SolveArgs) -> Result<String, CliError> {
    let cfg = args.solver.config(args.algorithm, args.seed)?;
    let scenario = load_scenario(&args.scenario)?;
    let run = solve(&scenario, &cfg)?;
    let report = RunReport::self_referenced(&run);
    write_file(&args.out, &serde_json::to_string_pretty(&report).expect("reports serialize"))?;
    let csv_path = args.csv.clone().unwrap_or_else(|| args.out.with_extension("csv"));
    write_file(&csv_path, &front_csv(&run.front))?;
    Ok(format!(
        "{}: {} front points, {} evaluations, hypervolume {:.6}\n",
        run.algorithm,
        run.front.len(),
        run.evaluations,
        report.hypervolume
    ))
}

fn thread_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        builder = builder.num_threads(j);
    }
    builder.build().map_err(|e| CliError::Usage(e.to_string()))
}

/// Aggregates written by `compare`, also recorded in `summary.json`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompareSummary {
    pub reference_point: [f64; 2],
    pub evaluations: u64,
    pub seeds: Vec<u64>,
    pub aggregates: Vec<AggregateRow>,
}

#[derive(Debug, Clone)]
pub struct Comparison {
    /// Ordered by (algorithm, seed).
    pub runs: Vec<SolverRun>,
    pub reference: ReferencePoint,
    pub run_rows: Vec<RunRow>,
    pub aggregates: Vec<AggregateRow>,
}

impl Comparison {
    pub fn summary_text(&self) -> String {
        let mut out = format!(
            "{} runs, reference point ({:.6}, {:.6})\n",
            self.runs.len(),
            self.reference.0[0],
            self.reference.0[1]
        );
        for a in &self.aggregates {
            out += &format!(
                "{:<10} hypervolume {:.6} ± {:.6}, mean elapsed {:.1} ms\n",
                a.algorithm, a.hypervolume_mean, a.hypervolume_std, a.elapsed_ms_mean
            );
        }
        out
    }
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = if values.len() > 1 {
        values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    (mean, var.sqrt())
}

/// Runs every algorithm for every seed. All runs are scored against one
/// reference point derived from the union of their fronts.
pub fn compare_runs(
    scenario: &Scenario,
    solver: &SolverArgs,
    seeds: &[u64],
    jobs: Option<usize>,
) -> Result<Comparison, CliError> {
    if seeds.is_empty() {
        return Err(CliError::Usage("--seeds must be at least 1".into()));
    }
    let tasks: Vec<SolverConfig> = Algorithm::ALL
        .iter()
        .flat_map(|&alg| seeds.iter().map(move |&s| (alg, s)))
        .map(|(alg, s)| solver.config(alg, s))
        .collect::<Result<_, _>>()?;
    let pool = thread_pool(jobs)?;
    let runs: Vec<SolverRun> = pool.install(|| {
        tasks
            .par_iter()
            .map(|cfg| solve(scenario, cfg))
            .collect::<Result<Vec<_>, _>>()
    })?;

    let all_points: Vec<[f64; 2]> = runs.iter().flat_map(|r| r.front.points()).collect();
    let reference = ReferencePoint::from_points(all_points.iter()).unwrap_or(ReferencePoint([1.0, 1.0]));
    let run_rows: Vec<RunRow> = runs
        .iter()
        .map(|r| RunRow {
            algorithm: r.algorithm.name().to_string(),
            seed: r.seed,
            evaluations: r.evaluations,
            elapsed_ms: r.elapsed.as_secs_f64() * 1e3,
            hypervolume: hypervolume(&r.front.points(), reference).value,
        })
        .collect();

    let mut grouped: BTreeMap<Algorithm, Vec<&RunRow>> = BTreeMap::new();
    for (run, row) in runs.iter().zip(&run_rows) {
        grouped.entry(run.algorithm).or_default().push(row);
    }
    let aggregates = grouped
        .into_iter()
        .map(|(alg, rows)| {
            let hv: Vec<f64> = rows.iter().map(|r| r.hypervolume).collect();
            let (hypervolume_mean, hypervolume_std) = mean_std(&hv);
            AggregateRow {
                algorithm: alg.name().to_string(),
                runs: rows.len(),
                hypervolume_mean,
                hypervolume_std,
                elapsed_ms_mean: rows.iter().map(|r| r.elapsed_ms).sum::<f64>() / rows.len() as f64,
            }
        })
        .collect();
    Ok(Comparison { runs, reference, run_rows, aggregates })
}

/// Writes `runs.csv`, `aggregate.csv`, `fronts.csv` and `summary.json`.
pub fn write_comparison(c: &Comparison, dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    write_file(&dir.join("runs.csv"), &to_csv(&c.run_rows))?;
    write_file(&dir.join("aggregate.csv"), &to_csv(&c.aggregates))?;
    let plot: Vec<PlotRow> = c
        .runs
        .iter()
        .flat_map(|r| {
            front_rows(&r.front).into_iter().map(move |row| PlotRow {
                algorithm: r.algorithm.name().to_string(),
                seed: r.seed,
                deployed: row.deployed,
                energy_kwh: row.energy_kwh,
                placement: row.placement,
            })
        })
        .collect();
    write_file(&dir.join("fronts.csv"), &to_csv(&plot))?;
    let summary = CompareSummary {
        reference_point: c.reference.0,
        evaluations: c.runs.first().map_or(0, |r| r.evaluations),
        seeds: {
            let mut s: Vec<u64> = c.runs.iter().map(|r| r.seed).collect();
            s.sort_unstable();
            s.dedup();
            s
        },
        aggregates: c.aggregates.clone(),
    };
    write_file(&dir.join("summary.json"), &serde_json::to_string_pretty(&summary).expect("summaries serialize"))
}

pub fn cmd_compare(args: &CompareArgs) -> Result<Comparison, CliError> {
    if args.seeds == 0 {
        return Err(CliError::Usage("--seeds must be at least 1".into()));
    }
    args.solver.config(Algorithm::EpsNsga2, 0)?;
    let scenario = load_scenario(&args.scenario)?;
    let seeds: Vec<u64> = (args.first_seed..args.first_seed + args.seeds).collect();
    let comparison = compare_runs(&scenario, &args.solver, &seeds, args.jobs)?;
    write_comparison(&comparison, &args.out_dir)?;
    Ok(comparison)
}

pub fn cmd_oracle(args: &OracleArgs) -> Result<String, CliError> {
    let scenario = load_scenario(&args.scenario)?;
    let front = enumerate_front(&scenario, args.cap)?;
    write_file(&args.out, &front_csv(&front))?;
    Ok(format!("exact front: {} points\n", front.len()))
}

pub fn sweep_rows(
    points: &[(usize, usize)],
    seed: u64,
    solver: &SolverArgs,
    jobs: Option<usize>,
) -> Result<Vec<SweepRow>, CliError> {
    let cfg = solver.config(Algorithm::EpsNsga2, seed)?;
    let pool = thread_pool(jobs)?;
    pool.install(|| {
        points
            .par_iter()
            .map(|&(m, n)| {
                let scenario = generate(&GeneratorConfig::new(m, n, seed))?;
                let dims = dimensions_of(&scenario);
                let run = solve(&scenario, &cfg)?;
                // Front is sorted by -deployed ascending: first = most deployed.
                let (deployed, energy) = run
                    .front
                    .members()
                    .first()
                    .map_or((0, 0.0), |p| (p.objectives.deployed(), p.objectives.energy));
                Ok(SweepRow {
                    m,
                    n,
                    dvars: dims.decision_variables,
                    constraints: dims.constraints,
                    deployed,
                    energy_kwh: format!("{energy:.6}"),
                    elapsed_ms: run.elapsed.as_secs_f64() * 1e3,
                })
            })
            .collect()
    })
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<String, CliError> {
    let rows = sweep_rows(&args.points, args.seed, &args.solver, args.jobs)?;
    write_file(&args.out, &to_csv(&rows))?;
    Ok(format!("{} sweep points written to {}\n", rows.len(), args.out.display()))
}
