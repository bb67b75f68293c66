//! Instance-to-instance transformations and their certificate maps.

pub mod acyclic;
pub mod elimination;
pub mod full_edges;
pub mod modules;

pub use acyclic::{acyclify, Acyclifier};
pub use elimination::{
    find_isolated, find_leaf, leaf_update, rule_degree0, rule_degree1, EliminationStep, EliminationTrace,
    RuleOutcome, Witnesses,
};
pub use full_edges::{lift_factor_over_x, subtract_full_edges, FullEdgeSelection};
pub use modules::{contract_modules, expand_factor, find_module_partition, Module, ModuleMap};
