//! Deciding and solving instances whose graph is a forest.
//!
//! Repeatedly removes the canonically first vertex of degree at most one
//! (isolated-vertex or leaf elimination). When an isolated edge `uv` is reached from its `U`
//! end, the `V` end is eliminated instead. A factor is rebuilt by walking the
//! trace backwards: each restored leaf `v` with hub `u` takes the first
//! witness pair `(c_u, c_v)` for the degree already required at `u`, gets
//! `φ(uv) = c_v`, and `u`'s requirement becomes `c_u`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::factor::{is_forest, Decision, EdgeWeighting};
use crate::instance::{DegreeList, Instance, Side, Vertex};
use crate::transforms::elimination::{leaf_update, EliminationStep, EliminationTrace};

/// An instance whose graph is known to be acyclic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestInstance(Instance);

impl ForestInstance {
    pub fn new(inst: Instance) -> Result<Self> {
        let all: Vec<usize> = (0..inst.edges().len()).collect();
        if !is_forest(&inst, &all) {
            return Err(Error::Precondition("graph contains a cycle".into()));
        }
        Ok(ForestInstance(inst))
    }

    pub(crate) fn new_unchecked(inst: Instance) -> Self {
        ForestInstance(inst)
    }

    pub fn instance(&self) -> &Instance {
        &self.0
    }

    pub fn into_inner(self) -> Instance {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestSolution {
    pub decision: Decision,
    /// Rule applications in order. On `No` the trace stops before the
    /// rejecting application.
    pub trace: EliminationTrace,
}

pub fn solve_forest(forest: &ForestInstance) -> Decision {
    solve_forest_traced(forest).decision
}

pub fn solve_forest_traced(forest: &ForestInstance) -> ForestSolution {
    let inst = forest.instance();
    let n = inst.num_vertices();
    let mut lists: Vec<DegreeList> = inst.vertices().map(|x| inst.list(x).clone()).collect();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (i, e) in inst.edges().iter().enumerate() {
        let (a, b) = inst.endpoint_slots(e);
        adj[a].insert(i);
        adj[b].insert(i);
    }
    let other = |i: usize, s: usize| {
        let (a, b) = inst.endpoint_slots(&inst.edges()[i]);
        if a == s {
            b
        } else {
            a
        }
    };
    let mut alive = vec![true; n];
    let mut trace = EliminationTrace::default();

    for _ in 0..n {
        let Some(mut s) = (0..n).find(|&s| alive[s] && adj[s].len() <= 1) else {
            unreachable!("a nonempty forest has a vertex of degree at most one");
        };
        if adj[s].len() == 1 && inst.vertex_at(s).side == Side::U {
            let t = other(*adj[s].first().unwrap(), s);
            if adj[t].len() == 1 {
                s = t;
            }
        }
        let vertex = inst.vertex_at(s);
        match adj[s].first().copied() {
            None => {
                if !lists[s].contains(0) {
                    return ForestSolution {
                        decision: Decision::No,
                        trace,
                    };
                }
                trace.steps.push(EliminationStep::Isolated { vertex });
            }
            Some(i) => {
                let t = other(i, s);
                let capacity = inst.edges()[i].capacity;
                let (list, witnesses) = leaf_update(&lists[t], &lists[s], capacity);
                if list.is_empty() {
                    return ForestSolution {
                        decision: Decision::No,
                        trace,
                    };
                }
                lists[t] = list;
                adj[t].remove(&i);
                adj[s].clear();
                trace.steps.push(EliminationStep::Leaf {
                    vertex,
                    neighbor: inst.vertex_at(t),
                    capacity,
                    witnesses,
                });
            }
        }
        alive[s] = false;
    }

    let phi = back_substitute(inst, &trace);
    ForestSolution {
        decision: Decision::Yes(phi),
        trace,
    }
}

fn back_substitute(inst: &Instance, trace: &EliminationTrace) -> EdgeWeighting {
    let mut need: Vec<Option<u32>> = vec![None; inst.num_vertices()];
    let mut phi = EdgeWeighting::new();
    for step in trace.steps.iter().rev() {
        match step {
            EliminationStep::Isolated { vertex } => need[inst.slot(*vertex)] = Some(0),
            EliminationStep::Leaf {
                vertex,
                neighbor,
                witnesses,
                ..
            } => {
                let hub = inst.slot(*neighbor);
                let target = need[hub].expect("hub is eliminated after its leaves");
                let &(c_u, c_v) = witnesses
                    .get(&target)
                    .and_then(|pairs| pairs.first())
                    .expect("required degree lies in the reduced list");
                need[hub] = Some(c_u);
                need[inst.slot(*vertex)] = Some(c_v);
                let (u, v) = edge_key(*vertex, *neighbor);
                phi.set(u, v, c_v);
            }
        }
    }
    phi
}

fn edge_key(a: Vertex, b: Vertex) -> (u32, u32) {
    match a.side {
        Side::U => (a.index, b.index),
        Side::V => (b.index, a.index),
    }
}
