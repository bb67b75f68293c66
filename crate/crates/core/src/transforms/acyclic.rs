//! Removing cycles from the skeleton of a factor.
//!
//! On a bipartite graph every cycle is even, so adding `δ` to alternate
//! cycle edges and subtracting `δ` from the others keeps every weighted
//! degree. Each step shifts by the largest feasible `δ`, which turns at
//! least one cycle edge full or empty. No edge ever enters the skeleton, so
//! there are at most `|E|` steps.
//!
//! Of the two orientations we take the one that increases the first changed
//! coordinate of the vector
//! `A(φ) = (φ(v_1 u_1), …, φ(v_1 u_p), φ(v_2 u_1), …, φ(v_k u_p))`,
//! so `A` strictly increases at each step.

use std::collections::VecDeque;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::factor::{first_violation, EdgeWeighting};
use crate::instance::Instance;

/// Step-by-step cycle elimination over dense weights.
pub struct Acyclifier<'a> {
    inst: &'a Instance,
    weights: Vec<u32>,
    /// Edge index -> position in the `A(φ)` order, i.e. sorted by `(v, u)`.
    a_rank: Vec<usize>,
    steps: usize,
}

impl<'a> Acyclifier<'a> {
    pub fn new(inst: &'a Instance, phi: &EdgeWeighting) -> Result<Self> {
        let weights = phi.to_dense(inst)?;
        if let Some(v) = first_violation(inst, &weights) {
            return Err(Error::Precondition(format!("not a factor: {v}")));
        }
        let mut order: Vec<usize> = (0..inst.edges().len()).collect();
        order.sort_by_key(|&i| {
            let e = &inst.edges()[i];
            (e.v, e.u)
        });
        let mut a_rank = vec![0; order.len()];
        for (rank, &i) in order.iter().enumerate() {
            a_rank[i] = rank;
        }
        Ok(Acyclifier {
            inst,
            weights,
            a_rank,
            steps: 0,
        })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// `A(φ)` for the current weights.
    pub fn a_vector(&self) -> Vec<u32> {
        let mut a = vec![0; self.weights.len()];
        for (i, &w) in self.weights.iter().enumerate() {
            a[self.a_rank[i]] = w;
        }
        a
    }

    fn in_skeleton(&self, i: usize) -> bool {
        let w = self.weights[i];
        w > 0 && w < self.inst.edges()[i].capacity
    }

    /// Some cycle of the skeleton as a closed walk of edge indices, or `None`
    /// if the skeleton is a forest. Deterministic: the first skeleton edge in
    /// canonical order that closes a cycle, plus the tree path between its ends.
    fn find_cycle(&self) -> Option<Vec<usize>> {
        let n = self.inst.num_vertices();
        let mut uf = UnionFind::<usize>::new(n);
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (i, e) in self.inst.edges().iter().enumerate() {
            if !self.in_skeleton(i) {
                continue;
            }
            let (a, b) = self.inst.endpoint_slots(e);
            if uf.union(a, b) {
                adj[a].push((b, i));
                adj[b].push((a, i));
                continue;
            }
            // BFS from b to a in the forest built so far.
            let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
            let mut seen = vec![false; n];
            let mut queue = VecDeque::from([b]);
            seen[b] = true;
            while let Some(x) = queue.pop_front() {
                if x == a {
                    break;
                }
                for &(y, ei) in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        parent[y] = Some((x, ei));
                        queue.push_back(y);
                    }
                }
            }
            // walk a -> b along parents, then close with edge i
            let mut cycle = Vec::new();
            let mut x = a;
            while let Some((p, ei)) = parent[x] {
                cycle.push(ei);
                x = p;
            }
            cycle.push(i);
            return Some(cycle);
        }
        None
    }

    /// Performs one shift. Returns `false` once the skeleton is acyclic.
    pub fn step(&mut self) -> bool {
        let Some(cycle) = self.find_cycle() else {
            return false;
        };
        // Consecutive edges in `cycle` share a vertex, so alternating signs
        // cancel at every vertex.
        let lead = (0..cycle.len())
            .min_by_key(|&p| self.a_rank[cycle[p]])
            .expect("cycle is nonempty");
        let raise = |p: usize| (p % 2) == (lead % 2);
        let delta = cycle
            .iter()
            .enumerate()
            .map(|(p, &i)| {
                if raise(p) {
                    self.inst.edges()[i].capacity - self.weights[i]
                } else {
                    self.weights[i]
                }
            })
            .min()
            .expect("cycle is nonempty");
        debug_assert!(delta >= 1);
        for (p, &i) in cycle.iter().enumerate() {
            if raise(p) {
                self.weights[i] += delta;
            } else {
                self.weights[i] -= delta;
            }
        }
        self.steps += 1;
        true
    }

    pub fn run(mut self) -> EdgeWeighting {
        while self.step() {}
        EdgeWeighting::from_dense(self.inst, &self.weights)
    }
}

/// Returns a factor with the same weighted degrees whose skeleton is a forest.
pub fn acyclify(inst: &Instance, phi: &EdgeWeighting) -> Result<EdgeWeighting> {
    Ok(Acyclifier::new(inst, phi)?.run())
}
