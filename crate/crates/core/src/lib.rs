//! Energy-aware placement of virtual network functions across multi-domain
//! SDN nodes, as a bi-objective problem: deploy as many VNFs as possible
//! while spending as little energy as possible, subject to per-node CPU,
//! memory and storage capacities.
//!
//! - [`model`]: instances, the placement genotype, objectives, constraints.
//! - [`scenario`]: seeded instance generation and JSON files.
//! - [`moea`]: NSGA-II, NSGA-III and ε-NSGA-II.
//! - [`oracle`]: exact fronts by enumeration for small instances.
//! - [`metrics`]: hypervolume, additive ε and generational distance.

pub mod metrics;
pub mod model;
pub mod moea;
pub mod oracle;
pub mod scenario;
