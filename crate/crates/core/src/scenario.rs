//! Seeded instance generation and JSON persistence.
//!
//! Scenario documents look like
//!
//! ```json
//! {"vnfs":[{"cores":2,"memory":4.0,"storage":20.0}],
//!  "nodes":[{"cores":4,"memory":8.0,"storage":50.0}],
//!  "energy":[[1.0]]}
//! ```
//!
//! Fronts are exported as a list of `{"placement":[..],"deployed":k,"energy":e}`.
//! Floats are written in shortest round-trip form and parsed exactly, so a
//! saved scenario reloads bit-for-bit.
//!
//! Generation draws every field from its own ChaCha stream keyed by the master
//! seed; stream ids are fixed per field (see [`stream`]), so adding a field
//! never shifts the draws of the existing ones.

use std::fs;
use std::io;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Assignment, ModelError, NodeSpec, ParetoFront, Scenario, VnfSpec};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: malformed document: {detail}")]
    Parse { path: PathBuf, detail: String },
    #[error("invalid generator config: {0}")]
    Config(String),
}

impl ScenarioError {
    fn parse(path: &Path, detail: impl Into<String>) -> Self {
        Self::Parse {
            path: path.to_path_buf(),
            detail: detail.into(),
        }
    }
}

/// Stream ids used by [`generate`], one per sampled field.
pub mod stream {
    pub const VNF_CORES: u64 = 1;
    pub const VNF_MEMORY: u64 = 2;
    pub const VNF_STORAGE: u64 = 3;
    pub const NODE_CORES: u64 = 4;
    pub const NODE_MEMORY: u64 = 5;
    pub const NODE_STORAGE: u64 = 6;
    pub const ENERGY: u64 = 7;
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub m: usize,
    pub n: usize,
    pub seed: u64,
    pub core_demand: RangeInclusive<u32>,
    pub memory_demand: RangeInclusive<f64>,
    pub storage_demand: RangeInclusive<f64>,
    pub energy: RangeInclusive<f64>,
    pub core_capacity: RangeInclusive<u32>,
    pub memory_capacity: RangeInclusive<f64>,
    pub storage_capacity: RangeInclusive<f64>,
}

impl GeneratorConfig {
    pub fn new(m: usize, n: usize, seed: u64) -> Self {
        Self {
            m,
            n,
            seed,
            core_demand: 1..=8,
            memory_demand: 1.0..=16.0,
            storage_demand: 10.0..=200.0,
            energy: 0.5..=5.0,
            core_capacity: 16..=64,
            memory_capacity: 32.0..=256.0,
            storage_capacity: 500.0..=5000.0,
        }
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        if self.m == 0 || self.n == 0 {
            return Err(ScenarioError::Config(format!(
                "need at least one VNF and one node, got m={} n={}",
                self.m, self.n
            )));
        }
        let int_ranges = [
            ("core_demand", &self.core_demand),
            ("core_capacity", &self.core_capacity),
        ];
        for (name, r) in int_ranges {
            if r.is_empty() || *r.start() == 0 {
                return Err(ScenarioError::Config(format!(
                    "{name} must be a nonempty range starting at >= 1, got {r:?}"
                )));
            }
        }
        let float_ranges = [
            ("memory_demand", &self.memory_demand, false),
            ("storage_demand", &self.storage_demand, false),
            ("energy", &self.energy, true),
            ("memory_capacity", &self.memory_capacity, false),
            ("storage_capacity", &self.storage_capacity, false),
        ];
        for (name, r, zero_ok) in float_ranges {
            let lo = *r.start();
            let hi = *r.end();
            let lower_ok = if zero_ok { lo >= 0.0 } else { lo > 0.0 };
            if !(lo.is_finite() && hi.is_finite() && lo <= hi && lower_ok) {
                return Err(ScenarioError::Config(format!(
                    "{name} must be a nonempty finite range with {} lower bound, got {r:?}",
                    if zero_ok { "nonnegative" } else { "positive" }
                )));
            }
        }
        Ok(())
    }
}

fn stream_rng(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

fn draw_f64(rng: &mut ChaCha8Rng, r: &RangeInclusive<f64>) -> f64 {
    if r.start() == r.end() {
        *r.start()
    } else {
        rng.gen_range(r.clone())
    }
}

/// Draws a scenario uniformly from the configured ranges.
pub fn generate(cfg: &GeneratorConfig) -> Result<Scenario, ScenarioError> {
    cfg.validate()?;
    let mut vnf_cores = stream_rng(cfg.seed, stream::VNF_CORES);
    let mut vnf_memory = stream_rng(cfg.seed, stream::VNF_MEMORY);
    let mut vnf_storage = stream_rng(cfg.seed, stream::VNF_STORAGE);
    let vnfs = (0..cfg.m)
        .map(|_| VnfSpec {
            cores: vnf_cores.gen_range(cfg.core_demand.clone()),
            memory: draw_f64(&mut vnf_memory, &cfg.memory_demand),
            storage: draw_f64(&mut vnf_storage, &cfg.storage_demand),
        })
        .collect();

    let mut node_cores = stream_rng(cfg.seed, stream::NODE_CORES);
    let mut node_memory = stream_rng(cfg.seed, stream::NODE_MEMORY);
    let mut node_storage = stream_rng(cfg.seed, stream::NODE_STORAGE);
    let nodes = (0..cfg.n)
        .map(|_| NodeSpec {
            cores: node_cores.gen_range(cfg.core_capacity.clone()),
            memory: draw_f64(&mut node_memory, &cfg.memory_capacity),
            storage: draw_f64(&mut node_storage, &cfg.storage_capacity),
        })
        .collect();

    let mut energy_rng = stream_rng(cfg.seed, stream::ENERGY);
    let energy = (0..cfg.m)
        .map(|_| (0..cfg.n).map(|_| draw_f64(&mut energy_rng, &cfg.energy)).collect())
        .collect();

    Scenario::new(vnfs, nodes, energy).map_err(|e| ScenarioError::Config(e.to_string()))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ResourceDoc {
    cores: u32,
    memory: f64,
    storage: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDoc {
    vnfs: Vec<ResourceDoc>,
    nodes: Vec<ResourceDoc>,
    energy: Vec<Vec<f64>>,
}

impl From<&Scenario> for ScenarioDoc {
    fn from(s: &Scenario) -> Self {
        Self {
            vnfs: s
                .vnfs()
                .iter()
                .map(|v| ResourceDoc { cores: v.cores, memory: v.memory, storage: v.storage })
                .collect(),
            nodes: s
                .nodes()
                .iter()
                .map(|n| ResourceDoc { cores: n.cores, memory: n.memory, storage: n.storage })
                .collect(),
            energy: s.energy().to_vec(),
        }
    }
}

impl TryFrom<ScenarioDoc> for Scenario {
    type Error = ModelError;

    fn try_from(doc: ScenarioDoc) -> Result<Self, ModelError> {
        Scenario::new(
            doc.vnfs
                .into_iter()
                .map(|r| VnfSpec { cores: r.cores, memory: r.memory, storage: r.storage })
                .collect(),
            doc.nodes
                .into_iter()
                .map(|r| NodeSpec { cores: r.cores, memory: r.memory, storage: r.storage })
                .collect(),
            doc.energy,
        )
    }
}

pub fn scenario_to_json(s: &Scenario) -> String {
    serde_json::to_string_pretty(&ScenarioDoc::from(s)).expect("scenario documents always serialize")
}

/// Parses a scenario document. `origin` only labels error messages.
pub fn scenario_from_json(text: &str, origin: &Path) -> Result<Scenario, ScenarioError> {
    let doc: ScenarioDoc =
        serde_json::from_str(text).map_err(|e| ScenarioError::parse(origin, e.to_string()))?;
    Scenario::try_from(doc).map_err(|e| ScenarioError::parse(origin, e.to_string()))
}

pub fn save_scenario(s: &Scenario, path: &Path) -> Result<(), ScenarioError> {
    write_text(path, &scenario_to_json(s))
}

pub fn load_scenario(path: &Path) -> Result<Scenario, ScenarioError> {
    scenario_from_json(&read_text(path)?, path)
}

/// One exported front point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrontPointDoc {
    pub placement: Vec<u32>,
    pub deployed: usize,
    pub energy: f64,
}

pub fn front_to_docs(front: &ParetoFront) -> Vec<FrontPointDoc> {
    front
        .members()
        .iter()
        .map(|m| FrontPointDoc {
            placement: m.placement.genes().to_vec(),
            deployed: m.objectives.deployed(),
            energy: m.objectives.energy,
        })
        .collect()
}

pub fn save_front(front: &ParetoFront, path: &Path) -> Result<(), ScenarioError> {
    let text = serde_json::to_string_pretty(&front_to_docs(front)).expect("front documents always serialize");
    write_text(path, &text)
}

/// Loads an exported front, checking each point against `scenario`.
pub fn load_front(path: &Path, scenario: &Scenario) -> Result<ParetoFront, ScenarioError> {
    let docs: Vec<FrontPointDoc> = serde_json::from_str(&read_text(path)?)
        .map_err(|e| ScenarioError::parse(path, e.to_string()))?;
    let mut members = Vec::with_capacity(docs.len());
    for (k, doc) in docs.into_iter().enumerate() {
        let placement = Assignment(doc.placement);
        let objectives = crate::model::evaluate(scenario, &placement)
            .map_err(|e| ScenarioError::parse(path, format!("[{k}].placement: {e}")))?;
        if objectives.deployed() != doc.deployed {
            return Err(ScenarioError::parse(
                path,
                format!("[{k}].deployed: {} does not match the placement ({})", doc.deployed, objectives.deployed()),
            ));
        }
        members.push(crate::model::FrontMember { placement, objectives });
    }
    Ok(ParetoFront::from_candidates(members))
}

fn write_text(path: &Path, text: &str) -> Result<(), ScenarioError> {
    fs::write(path, text).map_err(|source| ScenarioError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_text(path: &Path) -> Result<String, ScenarioError> {
    fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.to_path_buf(),
        source,
    })
}
