//! Exhaustive backtracking over edge weights, used as an independent check
//! on every other solver.
//!
//! A partial assignment survives only if every vertex `x` can still reach
//! some value of `K(x)`: there must be `c ∈ K(x)` with
//! `committed(x) <= c <= committed(x) + remaining capacity(x)`.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::factor::{Decision, EdgeWeighting};
use crate::instance::{DegreeList, Instance};

/// Limits on one oracle call. Running out is reported as [`Error::Budget`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 100_000_000,
            time_limit: None,
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes,
            time_limit: None,
        }
    }

    pub fn with_time_limit(self, limit: Duration) -> Self {
        Budget {
            time_limit: Some(limit),
            ..self
        }
    }
}

fn window(list: &DegreeList, lo: u64, hi: u64) -> bool {
    let clip = |x: u64| u32::try_from(x).unwrap_or(u32::MAX);
    lo <= u32::MAX as u64 && list.hits_window(clip(lo), clip(hi))
}

struct Search<'a> {
    inst: &'a Instance,
    lists: Vec<&'a DegreeList>,
    /// Edge indices in branching order.
    order: Vec<usize>,
    ends: Vec<(usize, usize)>,
    committed: Vec<u64>,
    remaining: Vec<u64>,
    weights: Vec<u32>,
    nodes: u64,
    budget: Budget,
    started: Instant,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, budget: Budget) -> Self {
        let lists: Vec<&DegreeList> = inst.vertices().map(|x| inst.list(x)).collect();
        let ends: Vec<(usize, usize)> = inst.edges().iter().map(|e| inst.endpoint_slots(e)).collect();
        let remaining = inst.capacity_degrees();
        let slack: Vec<usize> = lists
            .iter()
            .zip(&remaining)
            .map(|(l, &cap)| l.iter().take_while(|&c| c as u64 <= cap).count())
            .collect();
        let mut order: Vec<usize> = (0..ends.len()).collect();
        order.sort_by_key(|&i| {
            let (a, b) = ends[i];
            (slack[a].min(slack[b]), inst.edges()[i].u, inst.edges()[i].v)
        });
        Search {
            inst,
            lists,
            order,
            ends,
            committed: vec![0; remaining.len()],
            remaining,
            weights: vec![0; inst.edges().len()],
            nodes: 0,
            budget,
            started: Instant::now(),
        }
    }

    fn alive(&self, s: usize) -> bool {
        window(self.lists[s], self.committed[s], self.committed[s] + self.remaining[s])
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(Error::Budget { nodes: self.nodes });
        }
        if self.nodes.is_multiple_of(4096) {
            if let Some(limit) = self.budget.time_limit {
                if self.started.elapsed() > limit {
                    return Err(Error::Budget { nodes: self.nodes });
                }
            }
        }
        Ok(())
    }

    /// Calls `visit` on every factor in branch order until it returns `false`.
    /// Returns `false` if stopped early.
    fn run(&mut self, visit: &mut dyn FnMut(&[u32]) -> bool) -> Result<bool> {
        if !(0..self.lists.len()).all(|s| self.alive(s)) {
            return Ok(true);
        }
        self.descend(0, visit)
    }

    fn descend(&mut self, depth: usize, visit: &mut dyn FnMut(&[u32]) -> bool) -> Result<bool> {
        self.tick()?;
        if depth == self.order.len() {
            return Ok(visit(&self.weights));
        }
        let i = self.order[depth];
        let (a, b) = self.ends[i];
        let cap = self.inst.edges()[i].capacity;
        self.remaining[a] -= cap as u64;
        self.remaining[b] -= cap as u64;
        let mut go_on = true;
        for w in 0..=cap {
            self.committed[a] += w as u64;
            self.committed[b] += w as u64;
            if self.alive(a) && self.alive(b) {
                self.weights[i] = w;
                go_on = self.descend(depth + 1, visit)?;
            }
            self.committed[a] -= w as u64;
            self.committed[b] -= w as u64;
            if !go_on {
                break;
            }
        }
        self.weights[i] = 0;
        self.remaining[a] += cap as u64;
        self.remaining[b] += cap as u64;
        Ok(go_on)
    }
}

/// The first factor found in branch order, or `No`.
pub fn solve_bruteforce(inst: &Instance, budget: &Budget) -> Result<Decision> {
    let mut search = Search::new(inst, *budget);
    let mut found = None;
    search.run(&mut |w| {
        found = Some(EdgeWeighting::from_dense(inst, w));
        false
    })?;
    Ok(found.map_or(Decision::No, Decision::Yes))
}

/// Every factor, sorted by weight vector in edge order.
pub fn enumerate_all_factors(inst: &Instance, budget: &Budget) -> Result<Vec<EdgeWeighting>> {
    let mut dense: Vec<Vec<u32>> = Vec::new();
    Search::new(inst, *budget).run(&mut |w| {
        dense.push(w.to_vec());
        true
    })?;
    dense.sort_unstable();
    dense.dedup();
    Ok(dense.iter().map(|w| EdgeWeighting::from_dense(inst, w)).collect())
}

/// Number of factors, without storing them.
pub fn count_factors(inst: &Instance, budget: &Budget) -> Result<u64> {
    let mut n = 0u64;
    Search::new(inst, *budget).run(&mut |_| {
        n += 1;
        true
    })?;
    Ok(n)
}
