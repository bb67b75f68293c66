//! Guessing the full edges: the `I − X` instance and lifting factors back.

use crate::error::{Error, Result};
use crate::factor::{first_violation, EdgeWeighting};
use crate::instance::{Edge, Instance};

/// A candidate set `X` of full edges, as ascending indices into
/// `Instance::edges()` of the instance it was built for.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FullEdgeSelection {
    edges: Vec<usize>,
}

impl FullEdgeSelection {
    /// Every selected edge must have capacity at least 1.
    pub fn new(inst: &Instance, mut edges: Vec<usize>) -> Result<Self> {
        edges.sort_unstable();
        edges.dedup();
        for &i in &edges {
            let e = inst
                .edges()
                .get(i)
                .ok_or_else(|| Error::Structural(format!("edge index {i} out of range")))?;
            if e.capacity == 0 {
                return Err(Error::Precondition(format!(
                    "edge ({}, {}) has capacity 0 and cannot be full",
                    e.u, e.v
                )));
            }
        }
        Ok(FullEdgeSelection { edges })
    }

    pub(crate) fn from_sorted_unchecked(edges: Vec<usize>) -> Self {
        FullEdgeSelection { edges }
    }

    pub fn from_pairs(inst: &Instance, pairs: &[(u32, u32)]) -> Result<Self> {
        let ids = pairs
            .iter()
            .map(|&(u, v)| {
                inst.edge_index(u, v)
                    .ok_or_else(|| Error::Structural(format!("({u}, {v}) is not an edge")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(inst, ids)
    }

    pub fn edge_ids(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    fn contains(&self, i: usize) -> bool {
        self.edges.binary_search(&i).is_ok()
    }

    /// `d_X` per slot: the summed capacity of selected edges at each vertex.
    pub fn capacity_degrees(&self, inst: &Instance) -> Vec<u64> {
        let mut d = vec![0u64; inst.num_vertices()];
        for &i in &self.edges {
            let e = &inst.edges()[i];
            let (a, b) = inst.endpoint_slots(e);
            d[a] += e.capacity as u64;
            d[b] += e.capacity as u64;
        }
        d
    }
}

/// Builds `I − X`: delete `X`, lower every other capacity by one (not below
/// zero), and shift each list down by `d_X(x)`, dropping negative entries.
/// The vertex set is unchanged.
pub fn subtract_full_edges(inst: &Instance, x: &FullEdgeSelection) -> Result<Instance> {
    if let Some(&i) = x.edges.iter().find(|&&i| inst.edges().get(i).is_none_or(|e| e.capacity == 0)) {
        return Err(Error::Precondition(format!("selected edge {i} is missing or has capacity 0")));
    }
    Ok(subtract_unchecked(inst, x))
}

pub(crate) fn subtract_unchecked(inst: &Instance, x: &FullEdgeSelection) -> Instance {
    let dx = x.capacity_degrees(inst);
    let edges: Vec<Edge> = inst
        .edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| !x.contains(*i))
        .map(|(_, e)| Edge::new(e.u, e.v, e.capacity.saturating_sub(1)))
        .collect();
    let mut out = inst.with_sorted_edges(edges);
    for (s, &d) in dx.iter().enumerate() {
        if d > 0 {
            let vx = inst.vertex_at(s);
            let shifted = match u32::try_from(d) {
                Ok(d) => inst.list(vx).shifted_down(d),
                Err(_) => Default::default(),
            };
            out.set_list(vx, shifted);
        }
    }
    out
}

/// Given a factor `φ'` of `I − X`, sets `φ = φ'` off `X` and `φ = ρ` on `X`.
pub fn lift_factor_over_x(
    inst: &Instance,
    x: &FullEdgeSelection,
    reduced_factor: &EdgeWeighting,
) -> Result<EdgeWeighting> {
    let reduced = subtract_full_edges(inst, x)?;
    let dense = reduced_factor.to_dense(&reduced)?;
    if let Some(v) = first_violation(&reduced, &dense) {
        return Err(Error::Precondition(format!("not a factor of I - X: {v}")));
    }
    Ok(lift_unchecked(inst, x, reduced_factor))
}

pub(crate) fn lift_unchecked(inst: &Instance, x: &FullEdgeSelection, reduced_factor: &EdgeWeighting) -> EdgeWeighting {
    let mut phi = reduced_factor.clone();
    for &i in &x.edges {
        let e = &inst.edges()[i];
        phi.set(e.u, e.v, e.capacity);
    }
    phi
}
