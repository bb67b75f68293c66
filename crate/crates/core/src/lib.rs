//! General factors of bipartite edge-weighted graphs.
//!
//! An instance is a bipartite graph `G = (U ⊎ V, E)` with edge capacities
//! `ρ` and a list `K(x)` of allowed degrees at every vertex. A factor is an
//! edge weighting `φ` with `0 <= φ(e) <= ρ(e)` whose weighted degree at
//! every vertex lies in its list.
//!
//! [`fpt::solve`] decides instances whose `U`-lists are singletons in time
//! exponential only in `|V|`, and returns a factor on success. The other
//! modules hold the building blocks (normalization, module contraction,
//! full-edge guessing, acyclification, the forest solver), an exhaustive
//! oracle, a front-end for extended global cardinality constraints, and
//! generators for hard instances.

pub mod cli;
pub mod egcc;
pub mod error;
pub mod factor;
pub mod forest;
pub mod format;
pub mod fpt;
pub mod gadgets;
pub mod instance;
pub mod normalize;
pub mod oracle;
pub mod spanning;
pub mod transforms;

pub use error::{Error, Result};
pub use factor::{verify_factor, Decision, EdgeWeighting, Violation};
pub use format::{parse_factor, parse_instance, serialize_factor, serialize_instance};
pub use fpt::{solve, solve_singleton_ones, FastPath, SolveOptions, SolveStats};
pub use instance::{DegreeList, Edge, Instance, Side, Vertex};
pub use normalize::{normalize, Normalized, Rejected};
pub use oracle::{enumerate_all_factors, solve_bruteforce, Budget};
