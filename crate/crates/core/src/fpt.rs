//! The fixed-parameter algorithm for instances whose `U`-lists are
//! singletons, parameterized by `k = |V|`.
//!
//! 1. Normalize, then contract maximal c-modules of `U` into `I_M`.
//! 2. Guess the full-edge set `X ⊆ E_M` and build `I_M − X`.
//! 3. Guess a maximal spanning forest `T` of `I_M − X` and decide `(T, ρ^X, K^X)`
//!    with the forest solver.
//! 4. Lift a forest certificate: zero off `T`, `ρ` on `X`, expand modules,
//!    re-inflate the normalized vertices.
//!
//! When every `U`-list is `{1}`, step 2 is skipped: forests of `I_M` itself
//! are solved with the unmodified capacities and lists.
//!
//! Edges of capacity 0 can only carry weight 0, so forests are taken over
//! the edges of positive capacity; a forest of the full graph is never
//! needed to reach a certificate.

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::error::{Error, Result};
use crate::factor::{Decision, EdgeWeighting};
use crate::forest::{solve_forest, ForestInstance};
use crate::instance::{Edge, Instance};
use crate::normalize::normalize;
use crate::spanning::SpanningForests;
use crate::transforms::full_edges::{lift_unchecked, subtract_unchecked, FullEdgeSelection};
use crate::transforms::modules::{contract_modules, expand_factor, find_module_partition};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum FastPath {
    /// Use the fast path exactly when every normalized `U`-list is `{1}`.
    #[default]
    Auto,
    /// Require the fast path; other instances are a precondition error.
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub fast_path: FastPath,
    /// Worker threads; 0 or 1 runs on the calling thread.
    pub workers: usize,
    /// Results never depend on `workers`, so this only documents intent.
    pub deterministic: bool,
    /// Explore the whole search space instead of stopping at the first success.
    pub count_all: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            fast_path: FastPath::Auto,
            workers: 1,
            deterministic: true,
            count_all: false,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Outcome {
    Yes,
    #[default]
    No,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Yes => "yes",
            Outcome::No => "no",
        })
    }
}

/// Search-space counters. Counts stop at the first success unless
/// `count_all` is set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// `|V|` of the input instance.
    pub k: usize,
    /// Number of groups `p` in the module partition of the normalized `U`.
    pub modules_found: usize,
    pub contracted_edge_count: usize,
    pub x_subsets_explored: u64,
    pub forests_explored: u64,
    pub forest_solves: u64,
    pub fast_path: bool,
    /// Set when normalization alone rejected the instance.
    pub rejected_early: bool,
    pub outcome: Outcome,
}

impl SolveStats {
    /// `k(2^k − 1)`, saturating.
    pub fn module_bound(&self) -> u128 {
        if self.k >= 120 {
            return u128::MAX;
        }
        let k = self.k as u128;
        k * ((1u128 << k) - 1)
    }

    /// `2^{|E_M|}`, saturating.
    pub fn subset_bound(&self) -> u128 {
        if self.contracted_edge_count >= 128 {
            u128::MAX
        } else {
            1u128 << self.contracted_edge_count
        }
    }
}

impl fmt::Display for SolveStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k={}", self.k)?;
        writeln!(f, "modules_found={}", self.modules_found)?;
        writeln!(f, "contracted_edge_count={}", self.contracted_edge_count)?;
        writeln!(f, "x_subsets_explored={}", self.x_subsets_explored)?;
        writeln!(f, "forests_explored={}", self.forests_explored)?;
        writeln!(f, "forest_solves={}", self.forest_solves)?;
        writeln!(f, "fast_path={}", self.fast_path)?;
        writeln!(f, "rejected_early={}", self.rejected_early)?;
        writeln!(f, "outcome={}", self.outcome)
    }
}

/// Candidate full-edge sets of `inst`, by size and then lexicographically
/// in edge order. Only edges of positive capacity are used, and a set is
/// skipped when `d_X(x) > max K(x)` at some vertex (an empty list counts as
/// max 0).
pub fn enumerate_full_edge_sets(inst: &Instance) -> impl Iterator<Item = FullEdgeSelection> {
    let candidates: Vec<usize> = (0..inst.edges().len())
        .filter(|&i| inst.edges()[i].capacity >= 1)
        .collect();
    let ends: Vec<(usize, usize, u64)> = inst
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = inst.endpoint_slots(e);
            (a, b, e.capacity as u64)
        })
        .collect();
    let max_k: Vec<u64> = inst
        .vertices()
        .map(|x| inst.list(x).greatest().unwrap_or(0) as u64)
        .collect();
    let n = candidates.len();
    (0..=n).flat_map(move |size| {
        let ends = ends.clone();
        let max_k = max_k.clone();
        candidates
            .clone()
            .into_iter()
            .combinations(size)
            .filter(move |x| {
                let mut d = vec![0u64; max_k.len()];
                x.iter().all(|&i| {
                    let (a, b, c) = ends[i];
                    d[a] += c;
                    d[b] += c;
                    d[a] <= max_k[a] && d[b] <= max_k[b]
                })
            })
            .map(FullEdgeSelection::from_sorted_unchecked)
    })
}

#[derive(Debug, Default)]
struct Probe {
    forests: u64,
    solves: u64,
    witness: Option<EdgeWeighting>,
}

/// Runs `probe` over `items` in order, in parallel batches when a pool is
/// given. Results are folded in item order, so counts and the witness are
/// those of a sequential scan.
fn scan<T, I, F>(items: I, pool: Option<&ThreadPool>, count_all: bool, probe: F) -> (u64, Probe)
where
    T: Send,
    I: Iterator<Item = T>,
    F: Fn(T) -> Probe + Sync,
{
    let batch = pool.map_or(1, |p| p.current_num_threads() * 8);
    let mut items = items.peekable();
    let mut scanned = 0u64;
    let mut total = Probe::default();
    while items.peek().is_some() {
        let chunk: Vec<T> = items.by_ref().take(batch).collect();
        let results: Vec<Probe> = match pool {
            Some(pool) => pool.install(|| chunk.into_par_iter().map(&probe).collect()),
            None => chunk.into_iter().map(&probe).collect(),
        };
        for r in results {
            scanned += 1;
            total.forests += r.forests;
            total.solves += r.solves;
            if total.witness.is_none() {
                total.witness = r.witness;
            }
            if total.witness.is_some() && !count_all {
                return (scanned, total);
            }
        }
    }
    (scanned, total)
}

/// Maximal spanning forests over the positive-capacity edges, as edge
/// index lists into `inst.edges()`.
fn positive_forests(inst: &Instance) -> impl Iterator<Item = Vec<usize>> {
    let live: Vec<usize> = (0..inst.edges().len())
        .filter(|&i| inst.edges()[i].capacity > 0)
        .collect();
    let pairs = live.iter().map(|&i| inst.endpoint_slots(&inst.edges()[i])).collect();
    SpanningForests::new(inst.num_vertices(), pairs).map(move |t| t.into_iter().map(|j| live[j]).collect())
}

fn solve_on_forest(inst: &Instance, forest: &[usize]) -> Option<EdgeWeighting> {
    let edges: Vec<Edge> = forest.iter().map(|&i| inst.edges()[i]).collect();
    let t = ForestInstance::new_unchecked(inst.with_sorted_edges(edges));
    match solve_forest(&t) {
        Decision::Yes(phi) => Some(phi),
        Decision::No => None,
    }
}

/// Whether some vertex needs more than its incident capacity allows.
fn capacity_starved(inst: &Instance) -> bool {
    let cap = inst.capacity_degrees();
    inst.vertices()
        .zip(cap)
        .any(|(x, c)| inst.list(x).least().is_none_or(|m| m as u64 > c))
}

fn probe_x(im: &Instance, x: FullEdgeSelection, count_all: bool) -> Probe {
    let reduced = subtract_unchecked(im, &x);
    let mut probe = Probe::default();
    if capacity_starved(&reduced) {
        return probe;
    }
    for forest in positive_forests(&reduced) {
        probe.forests += 1;
        probe.solves += 1;
        if let Some(phi) = solve_on_forest(&reduced, &forest) {
            if probe.witness.is_none() {
                probe.witness = Some(lift_unchecked(im, &x, &phi));
            }
            if !count_all {
                break;
            }
        }
    }
    probe
}

fn build_pool(workers: usize) -> Result<Option<ThreadPool>> {
    if workers <= 1 {
        return Ok(None);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map(Some)
        .map_err(|e| Error::Input(format!("cannot start {workers} workers: {e}")))
}

/// Decides an instance whose `U`-lists have at most one element each and
/// returns a certificate for the input instance on `Yes`.
pub fn solve(inst: &Instance, opts: &SolveOptions) -> Result<(Decision, SolveStats)> {
    if let Some(i) = inst.u_lists().iter().position(|l| l.len() > 1) {
        return Err(Error::Precondition(format!(
            "U vertex {} has list {}; the parameterized solver needs singleton U-lists, use the oracle instead",
            i + 1,
            inst.u_lists()[i]
        )));
    }
    let mut stats = SolveStats {
        k: inst.num_v(),
        ..SolveStats::default()
    };
    let normalized = match normalize(inst) {
        Ok(n) => n,
        Err(_) => {
            stats.rejected_early = true;
            return Ok((Decision::No, stats));
        }
    };
    let base = &normalized.instance;
    let all_ones = base.u_lists().iter().all(|l| l.as_slice() == [1]);
    let fast = match opts.fast_path {
        FastPath::Auto => all_ones,
        FastPath::On if all_ones => true,
        FastPath::On => {
            return Err(Error::Precondition(
                "fast path requires every U-list to be {1}".into(),
            ))
        }
        FastPath::Off => false,
    };

    let mm = find_module_partition(base)?;
    let im = contract_modules(base, &mm);
    stats.modules_found = mm.len();
    stats.contracted_edge_count = im.edges().len();
    stats.fast_path = fast;

    let pool = build_pool(opts.workers)?;
    let found = if fast {
        stats.x_subsets_explored = 1;
        let (forests, probe) = scan(positive_forests(&im), pool.as_ref(), opts.count_all, |forest| {
            let witness = solve_on_forest(&im, &forest);
            Probe {
                forests: 1,
                solves: 1,
                witness,
            }
        });
        stats.forests_explored = forests;
        stats.forest_solves = probe.solves;
        probe.witness
    } else {
        let count_all = opts.count_all;
        let (xs, probe) = scan(enumerate_full_edge_sets(&im), pool.as_ref(), count_all, |x| {
            probe_x(&im, x, count_all)
        });
        stats.x_subsets_explored = xs;
        stats.forests_explored = probe.forests;
        stats.forest_solves = probe.solves;
        probe.witness
    };

    match found {
        None => Ok((Decision::No, stats)),
        Some(phi_m) => {
            let phi = normalized.inflate(&expand_factor(&mm, &phi_m)?);
            debug_assert!(crate::factor::is_factor(inst, &phi));
            stats.outcome = Outcome::Yes;
            Ok((Decision::Yes(phi), stats))
        }
    }
}

/// The fast path alone, for instances where every `U`-list is `{1}`.
pub fn solve_singleton_ones(inst: &Instance, opts: &SolveOptions) -> Result<(Decision, SolveStats)> {
    if let Some(i) = inst.u_lists().iter().position(|l| l.as_slice() != [1]) {
        return Err(Error::Precondition(format!(
            "U vertex {} has list {}, expected {{1}}",
            i + 1,
            inst.u_lists()[i]
        )));
    }
    solve(
        inst,
        &SolveOptions {
            fast_path: FastPath::On,
            ..*opts
        },
    )
}
