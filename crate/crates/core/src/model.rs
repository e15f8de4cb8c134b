//! Problem instance, genotype encoding, objectives and capacity constraints.
//!
//! A placement problem has `M` VNFs, each requesting CPU cores, memory and
//! storage, and `N` domain nodes with matching capacities. Deploying VNF `i`
//! on node `j` costs `energy[i][j]` kWh. The two objectives, in
//! minimization form, are the negated deployment count and the total energy
//! of the deployed VNFs.
//!
//! A solution is stored as one gene per VNF: `0` means "not deployed" and
//! `k >= 1` means "deployed on node `k - 1`". This is the row-compressed form
//! of the binary matrix `x[i][j]` with every row summing to at most one, so
//! the single-placement constraint holds by construction and only the `3N`
//! capacity constraints need checking.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("assignment has {found} genes but the scenario has {expected} VNFs")]
    LengthMismatch { expected: usize, found: usize },
    #[error("gene {index} is {value}, but only 0..={max} is valid ({max} nodes)")]
    GeneOutOfRange { index: usize, value: u32, max: u32 },
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("placement matrix row {row} deploys the VNF {count} times")]
    MultiplePlacement { row: usize, count: usize },
    #[error("placement matrix row {row} has {found} columns, expected {expected}")]
    RaggedMatrix { row: usize, expected: usize, found: usize },
}

/// Resource demand of one VNF. Its id is its position in [`Scenario::vnfs`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VnfSpec {
    pub cores: u32,
    /// GB
    pub memory: f64,
    /// GB
    pub storage: f64,
}

/// Capacity of one domain node. Its id is its position in [`Scenario::nodes`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeSpec {
    pub cores: u32,
    /// GB
    pub memory: f64,
    /// GB
    pub storage: f64,
}

/// A validated problem instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    vnfs: Vec<VnfSpec>,
    nodes: Vec<NodeSpec>,
    energy: Vec<Vec<f64>>,
}

fn check_positive(what: &str, value: f64) -> Result<(), ModelError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(ModelError::InvalidScenario(format!(
            "{what} must be a positive finite number, got {value}"
        )))
    }
}

impl Scenario {
    pub fn new(
        vnfs: Vec<VnfSpec>,
        nodes: Vec<NodeSpec>,
        energy: Vec<Vec<f64>>,
    ) -> Result<Self, ModelError> {
        if vnfs.is_empty() {
            return Err(ModelError::InvalidScenario("vnfs: at least one VNF is required".into()));
        }
        if nodes.is_empty() {
            return Err(ModelError::InvalidScenario("nodes: at least one node is required".into()));
        }
        for (i, v) in vnfs.iter().enumerate() {
            if v.cores == 0 {
                return Err(ModelError::InvalidScenario(format!("vnfs[{i}].cores must be >= 1")));
            }
            check_positive(&format!("vnfs[{i}].memory"), v.memory)?;
            check_positive(&format!("vnfs[{i}].storage"), v.storage)?;
        }
        for (j, n) in nodes.iter().enumerate() {
            if n.cores == 0 {
                return Err(ModelError::InvalidScenario(format!("nodes[{j}].cores must be >= 1")));
            }
            check_positive(&format!("nodes[{j}].memory"), n.memory)?;
            check_positive(&format!("nodes[{j}].storage"), n.storage)?;
        }
        if energy.len() != vnfs.len() {
            return Err(ModelError::InvalidScenario(format!(
                "energy: expected {} rows (one per VNF), found {}",
                vnfs.len(),
                energy.len()
            )));
        }
        for (i, row) in energy.iter().enumerate() {
            if row.len() != nodes.len() {
                return Err(ModelError::InvalidScenario(format!(
                    "energy[{i}]: expected {} columns (one per node), found {}",
                    nodes.len(),
                    row.len()
                )));
            }
            for (j, &e) in row.iter().enumerate() {
                if !e.is_finite() || e < 0.0 {
                    return Err(ModelError::InvalidScenario(format!(
                        "energy[{i}][{j}] must be a nonnegative finite number, got {e}"
                    )));
                }
            }
        }
        Ok(Self { vnfs, nodes, energy })
    }

    pub fn vnfs(&self) -> &[VnfSpec] {
        &self.vnfs
    }

    pub fn nodes(&self) -> &[NodeSpec] {
        &self.nodes
    }

    pub fn energy(&self) -> &[Vec<f64>] {
        &self.energy
    }

    /// Number of VNFs (`M`).
    pub fn num_vnfs(&self) -> usize {
        self.vnfs.len()
    }

    /// Number of domain nodes (`N`).
    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    /// Upper bound on the energy objective: every VNF on its most expensive node.
    pub fn max_energy(&self) -> f64 {
        self.energy
            .iter()
            .map(|row| row.iter().copied().fold(0.0, f64::max))
            .sum()
    }
}

/// Per-VNF placement genes; see the module docs for the encoding.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(pub Vec<u32>);

impl Assignment {
    /// The assignment that deploys nothing.
    pub fn empty(m: usize) -> Self {
        Self(vec![0; m])
    }

    pub fn genes(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Node index hosting VNF `i`, if deployed.
    pub fn node_of(&self, i: usize) -> Option<usize> {
        match self.0[i] {
            0 => None,
            k => Some(k as usize - 1),
        }
    }

    pub fn deployed_count(&self) -> usize {
        self.0.iter().filter(|&&g| g != 0).count()
    }

    pub fn validate(&self, scenario: &Scenario) -> Result<(), ModelError> {
        if self.0.len() != scenario.num_vnfs() {
            return Err(ModelError::LengthMismatch {
                expected: scenario.num_vnfs(),
                found: self.0.len(),
            });
        }
        let max = scenario.num_nodes() as u32;
        match self.0.iter().position(|&g| g > max) {
            Some(index) => Err(ModelError::GeneOutOfRange {
                index,
                value: self.0[index],
                max,
            }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Assignment {
    /// Semicolon-separated genes, e.g. `1;0;2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Objectives in minimization form plus aggregate constraint violation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveVector {
    /// Negated number of deployed VNFs.
    pub neg_deployed: f64,
    /// Total deployment energy in kWh.
    pub energy: f64,
    /// 0 iff every capacity constraint holds.
    pub violation: f64,
}

impl ObjectiveVector {
    pub fn is_feasible(&self) -> bool {
        self.violation == 0.0
    }

    pub fn objectives(&self) -> [f64; 2] {
        [self.neg_deployed, self.energy]
    }

    pub fn deployed(&self) -> usize {
        (-self.neg_deployed) as usize
    }

    /// Lexicographic order on `(neg_deployed, energy)`.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.neg_deployed
            .total_cmp(&other.neg_deployed)
            .then(self.energy.total_cmp(&other.energy))
    }
}

/// Pareto dominance for minimization: `a <= b` everywhere, `<` somewhere.
pub fn pareto_dominates(a: &[f64; 2], b: &[f64; 2]) -> bool {
    a[0] <= b[0] && a[1] <= b[1] && (a[0] < b[0] || a[1] < b[1])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProblemDimensions {
    /// `M * N`
    pub decision_variables: usize,
    /// `M + 3N`: one placement row per VNF plus three capacity rows per node.
    pub constraints: usize,
}

impl ProblemDimensions {
    pub fn for_size(m: usize, n: usize) -> Self {
        Self {
            decision_variables: m * n,
            constraints: m + 3 * n,
        }
    }
}

pub fn dimensions_of(scenario: &Scenario) -> ProblemDimensions {
    ProblemDimensions::for_size(scenario.num_vnfs(), scenario.num_nodes())
}

/// Evaluates both objectives and the constraint violation.
pub fn evaluate(scenario: &Scenario, a: &Assignment) -> Result<ObjectiveVector, ModelError> {
    a.validate(scenario)?;
    Ok(evaluate_unchecked(scenario, a))
}

/// `evaluate` without the shape check; callers guarantee a valid assignment.
pub(crate) fn evaluate_unchecked(scenario: &Scenario, a: &Assignment) -> ObjectiveVector {
    let mut deployed = 0usize;
    let mut energy = 0.0;
    for (i, node) in (0..a.len()).filter_map(|i| a.node_of(i).map(|j| (i, j))) {
        deployed += 1;
        energy += scenario.energy[i][node];
    }
    ObjectiveVector {
        neg_deployed: 0.0 - deployed as f64,
        energy,
        violation: violation_unchecked(scenario, a),
    }
}

/// Capacity-normalized overshoot summed over every node and resource.
pub fn violation_of(scenario: &Scenario, a: &Assignment) -> Result<f64, ModelError> {
    a.validate(scenario)?;
    Ok(violation_unchecked(scenario, a))
}

fn violation_unchecked(scenario: &Scenario, a: &Assignment) -> f64 {
    let n = scenario.num_nodes();
    let mut cores = vec![0u64; n];
    let mut memory = vec![0.0f64; n];
    let mut storage = vec![0.0f64; n];
    for (i, vnf) in scenario.vnfs.iter().enumerate() {
        if let Some(j) = a.node_of(i) {
            cores[j] += u64::from(vnf.cores);
            memory[j] += vnf.memory;
            storage[j] += vnf.storage;
        }
    }
    let mut total = 0.0;
    for (j, node) in scenario.nodes.iter().enumerate() {
        if cores[j] > u64::from(node.cores) {
            total += (cores[j] - u64::from(node.cores)) as f64 / f64::from(node.cores);
        }
        if memory[j] > node.memory {
            total += (memory[j] - node.memory) / node.memory;
        }
        if storage[j] > node.storage {
            total += (storage[j] - node.storage) / node.storage;
        }
    }
    total
}

/// Expands the placement into the `M x N` binary decision matrix.
pub fn expand_to_matrix(a: &Assignment, n: usize) -> Vec<Vec<u8>> {
    (0..a.len())
        .map(|i| {
            let mut row = vec![0u8; n];
            if let Some(j) = a.node_of(i) {
                row[j] = 1;
            }
            row
        })
        .collect()
}

/// Inverse of [`expand_to_matrix`]; rejects rows that place a VNF twice.
pub fn compress_matrix(matrix: &[Vec<u8>], n: usize) -> Result<Assignment, ModelError> {
    matrix
        .iter()
        .enumerate()
        .map(|(row, cells)| {
            if cells.len() != n {
                return Err(ModelError::RaggedMatrix {
                    row,
                    expected: n,
                    found: cells.len(),
                });
            }
            let ones: Vec<usize> = (0..n).filter(|&j| cells[j] != 0).collect();
            match ones.as_slice() {
                [] => Ok(0),
                [j] => Ok(*j as u32 + 1),
                _ => Err(ModelError::MultiplePlacement {
                    row,
                    count: ones.len(),
                }),
            }
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Assignment)
}

/// One point of a front together with a witness placement.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontMember {
    pub placement: Assignment,
    pub objectives: ObjectiveVector,
}

/// Feasible, mutually nondominated points, one per objective vector, sorted
/// lexicographically by `(neg_deployed, energy)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ParetoFront {
    members: Vec<FrontMember>,
}

impl ParetoFront {
    /// Keeps the feasible nondominated candidates. Equal objective vectors
    /// collapse to the lexicographically smallest placement.
    pub fn from_candidates<I>(candidates: I) -> Self
    where
        I: IntoIterator<Item = FrontMember>,
    {
        let mut feasible: Vec<FrontMember> = candidates
            .into_iter()
            .filter(|c| c.objectives.is_feasible())
            .collect();
        feasible.sort_by(|a, b| {
            a.objectives
                .lex_cmp(&b.objectives)
                .then_with(|| a.placement.cmp(&b.placement))
        });
        feasible.dedup_by(|later, earlier| later.objectives.lex_cmp(&earlier.objectives).is_eq());
        // Sorted by first objective then second: a point survives iff its
        // energy is strictly below every point before it.
        let mut members = Vec::with_capacity(feasible.len());
        let mut best_energy = f64::INFINITY;
        for c in feasible {
            if c.objectives.energy < best_energy {
                best_energy = c.objectives.energy;
                members.push(c);
            }
        }
        Self { members }
    }

    pub fn members(&self) -> &[FrontMember] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Objective pairs `(neg_deployed, energy)` in front order.
    pub fn points(&self) -> Vec<[f64; 2]> {
        self.members.iter().map(|m| m.objectives.objectives()).collect()
    }
}
