//! Report and CSV formats written by the harness, plus their readers.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use vnfplace::metrics::{hypervolume, ReferencePoint};
use vnfplace::model::ParetoFront;
use vnfplace::moea::SolverRun;
use vnfplace::scenario::{front_to_docs, FrontPointDoc};

use crate::error::CliError;

/// One solver run as written to `report.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: String,
    pub seed: u64,
    pub evaluations: u64,
    pub elapsed_ms: f64,
    pub hypervolume: f64,
    pub reference_point: [f64; 2],
    pub front: Vec<FrontPointDoc>,
}

impl RunReport {
    pub fn new(run: &SolverRun, reference: ReferencePoint) -> Self {
        Self {
            algorithm: run.algorithm.name().to_string(),
            seed: run.seed,
            evaluations: run.evaluations,
            elapsed_ms: run.elapsed.as_secs_f64() * 1e3,
            hypervolume: hypervolume(&run.front.points(), reference).value,
            reference_point: reference.0,
            front: front_to_docs(&run.front),
        }
    }

    /// Reference point taken from the run's own front.
    pub fn self_referenced(run: &SolverRun) -> Self {
        let reference = ReferencePoint::from_points(run.front.points().iter()).unwrap_or(ReferencePoint([1.0, 1.0]));
        Self::new(run, reference)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontRow {
    pub deployed: usize,
    pub energy_kwh: String,
    pub placement: String,
}

/// Rows of the `deployed,energy_kwh,placement` schema, holding the exact
/// float text that goes to disk.
pub fn front_rows(front: &ParetoFront) -> Vec<FrontRow> {
    front
        .members()
        .iter()
        .map(|m| FrontRow {
            deployed: m.objectives.deployed(),
            energy_kwh: format!("{:.6}", m.objectives.energy),
            placement: m.placement.to_string(),
        })
        .collect()
}

pub fn front_csv(front: &ParetoFront) -> String {
    to_csv(&front_rows(front))
}

/// Parsed row of a front CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontCsvPoint {
    pub deployed: usize,
    pub energy_kwh: f64,
    pub placement: Vec<u32>,
}

pub fn parse_front_csv(text: &str) -> Result<Vec<FrontCsvPoint>, CliError> {
    let rows: Vec<FrontRow> = from_csv(text)?;
    rows.into_iter()
        .enumerate()
        .map(|(k, r)| {
            let energy_kwh = r
                .energy_kwh
                .parse()
                .map_err(|_| CliError::Parse(format!("row {k}: bad energy_kwh {:?}", r.energy_kwh)))?;
            let placement = if r.placement.is_empty() {
                Vec::new()
            } else {
                r.placement
                    .split(';')
                    .map(|g| g.parse().map_err(|_| CliError::Parse(format!("row {k}: bad placement {:?}", r.placement))))
                    .collect::<Result<_, _>>()?
            };
            Ok(FrontCsvPoint { deployed: r.deployed, energy_kwh, placement })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub algorithm: String,
    pub seed: u64,
    pub evaluations: u64,
    pub elapsed_ms: f64,
    pub hypervolume: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub algorithm: String,
    pub runs: usize,
    pub hypervolume_mean: f64,
    pub hypervolume_std: f64,
    pub elapsed_ms_mean: f64,
}

/// Plot data: every final front point of every run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotRow {
    pub algorithm: String,
    pub seed: u64,
    pub deployed: usize,
    pub energy_kwh: String,
    pub placement: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub m: usize,
    pub n: usize,
    pub dvars: usize,
    pub constraints: usize,
    pub deployed: usize,
    pub energy_kwh: String,
    pub elapsed_ms: f64,
}

/// Column names, written even when there are no rows.
pub trait CsvRow: Serialize {
    const HEADER: &'static [&'static str];
}

impl CsvRow for FrontRow {
    const HEADER: &'static [&'static str] = &["deployed", "energy_kwh", "placement"];
}

impl CsvRow for RunRow {
    const HEADER: &'static [&'static str] = &["algorithm", "seed", "evaluations", "elapsed_ms", "hypervolume"];
}

impl CsvRow for AggregateRow {
    const HEADER: &'static [&'static str] =
        &["algorithm", "runs", "hypervolume_mean", "hypervolume_std", "elapsed_ms_mean"];
}

impl CsvRow for PlotRow {
    const HEADER: &'static [&'static str] = &["algorithm", "seed", "deployed", "energy_kwh", "placement"];
}

impl CsvRow for SweepRow {
    const HEADER: &'static [&'static str] =
        &["m", "n", "dvars", "constraints", "deployed", "energy_kwh", "elapsed_ms"];
}

pub fn to_csv<T: CsvRow>(rows: &[T]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(T::HEADER).expect("in-memory CSV writes cannot fail");
    for r in rows {
        w.serialize(r).expect("in-memory CSV writes cannot fail");
    }
    let bytes = w.into_inner().expect("in-memory CSV flush cannot fail");
    String::from_utf8(bytes).expect("CSV output is UTF-8")
}

pub fn from_csv<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>, CliError> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<Vec<T>, _>>()
        .map_err(|e| CliError::Parse(e.to_string()))
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_front_csv_has_header_only() {
        let text = front_csv(&ParetoFront::default());
        assert_eq!(text, "deployed,energy_kwh,placement\n");
        assert!(parse_front_csv("deployed,energy_kwh,placement\n").unwrap().is_empty());
    }

    #[test]
    fn parse_rejects_bad_placement() {
        assert!(parse_front_csv("deployed,energy_kwh,placement\n1,1.000000,1;x\n").is_err());
    }
}
