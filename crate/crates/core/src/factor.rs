//! Edge weightings `φ`, factor verification, and the skeleton views.

use std::collections::BTreeMap;
use std::fmt;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::instance::{Edge, Instance, Vertex};

/// A map from edges `(u, v)` to weights. Absent edges have weight 0; zero
/// weights are never stored, so equal weightings compare equal.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeWeighting {
    weights: BTreeMap<(u32, u32), u32>,
}

impl EdgeWeighting {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, u: u32, v: u32) -> u32 {
        self.weights.get(&(u, v)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, u: u32, v: u32, weight: u32) {
        if weight == 0 {
            self.weights.remove(&(u, v));
        } else {
            self.weights.insert((u, v), weight);
        }
    }

    /// Nonzero entries in canonical edge order.
    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), u32)> + '_ {
        self.weights.iter().map(|(&k, &w)| (k, w))
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    /// Weights aligned with `inst.edges()`. Fails if `self` puts weight on a
    /// pair that is not an edge of `inst`.
    pub fn to_dense(&self, inst: &Instance) -> Result<Vec<u32>> {
        let mut dense = vec![0; inst.edges().len()];
        for (&(u, v), &w) in &self.weights {
            let idx = inst.edge_index(u, v).ok_or_else(|| {
                Error::Structural(format!("weighting references non-edge ({u}, {v})"))
            })?;
            dense[idx] = w;
        }
        Ok(dense)
    }

    pub fn from_dense(inst: &Instance, dense: &[u32]) -> Self {
        debug_assert_eq!(dense.len(), inst.edges().len());
        let mut phi = EdgeWeighting::new();
        for (e, &w) in inst.edges().iter().zip(dense) {
            phi.set(e.u, e.v, w);
        }
        phi
    }
}

impl FromIterator<((u32, u32), u32)> for EdgeWeighting {
    fn from_iter<T: IntoIterator<Item = ((u32, u32), u32)>>(iter: T) -> Self {
        let mut phi = EdgeWeighting::new();
        for ((u, v), w) in iter {
            phi.set(u, v, w);
        }
        phi
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Yes(EdgeWeighting),
    No,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn witness(&self) -> Option<&EdgeWeighting> {
        match self {
            Decision::Yes(phi) => Some(phi),
            Decision::No => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    OverCapacity { edge: Edge, weight: u32 },
    DegreeNotInList { vertex: Vertex, degree: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OverCapacity { edge, weight } => write!(
                f,
                "edge {} {} has weight {} above capacity {}",
                edge.u, edge.v, weight, edge.capacity
            ),
            Violation::DegreeNotInList { vertex, degree } => {
                write!(f, "vertex {vertex} has weighted degree {degree} outside its list")
            }
        }
    }
}

/// Weighted degree `d_φ` of every slot for dense weights.
pub fn weighted_degrees(inst: &Instance, dense: &[u32]) -> Vec<u64> {
    let mut deg = vec![0u64; inst.num_vertices()];
    for (e, &w) in inst.edges().iter().zip(dense) {
        let (a, b) = inst.endpoint_slots(e);
        deg[a] += w as u64;
        deg[b] += w as u64;
    }
    deg
}

/// Checks `φ(e) <= ρ(e)` for every edge, then `d_φ(x) ∈ K(x)` for every
/// vertex, both in canonical order, and reports the first failure.
///
/// `Ok(None)` means `φ` is a general factor. A weighting that touches a
/// non-edge is a structural error rather than a violation.
pub fn verify_factor(inst: &Instance, phi: &EdgeWeighting) -> Result<Option<Violation>> {
    let dense = phi.to_dense(inst)?;
    Ok(first_violation(inst, &dense))
}

pub fn first_violation(inst: &Instance, dense: &[u32]) -> Option<Violation> {
    for (e, &w) in inst.edges().iter().zip(dense) {
        if w > e.capacity {
            return Some(Violation::OverCapacity { edge: *e, weight: w });
        }
    }
    let deg = weighted_degrees(inst, dense);
    inst.vertices().zip(deg).find_map(|(x, d)| {
        let ok = u32::try_from(d).is_ok_and(|d| inst.list(x).contains(d));
        (!ok).then_some(Violation::DegreeNotInList {
            vertex: x,
            degree: d,
        })
    })
}

pub fn is_factor(inst: &Instance, phi: &EdgeWeighting) -> bool {
    matches!(verify_factor(inst, phi), Ok(None))
}

/// Edges with `φ(e) = ρ(e) > 0`.
pub fn full_edges(inst: &Instance, dense: &[u32]) -> Vec<usize> {
    inst.edges()
        .iter()
        .zip(dense)
        .enumerate()
        .filter(|(_, (e, &w))| w > 0 && w == e.capacity)
        .map(|(i, _)| i)
        .collect()
}

/// Edges of the skeleton `G_φ`: neither full nor empty.
pub fn skeleton_edges(inst: &Instance, dense: &[u32]) -> Vec<usize> {
    inst.edges()
        .iter()
        .zip(dense)
        .enumerate()
        .filter(|(_, (e, &w))| w > 0 && w < e.capacity)
        .map(|(i, _)| i)
        .collect()
}

/// Edges of the full skeleton `G_φ⁺`: not empty.
pub fn full_skeleton_edges(dense: &[u32]) -> Vec<usize> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > 0)
        .map(|(i, _)| i)
        .collect()
}

/// True iff the given edges of `inst` form a forest.
pub fn is_forest(inst: &Instance, edge_ids: &[usize]) -> bool {
    let mut uf = UnionFind::<usize>::new(inst.num_vertices());
    edge_ids.iter().all(|&i| {
        let (a, b) = inst.endpoint_slots(&inst.edges()[i]);
        uf.union(a, b)
    })
}

pub fn is_acyclic(inst: &Instance, dense: &[u32]) -> bool {
    is_forest(inst, &skeleton_edges(inst, dense))
}

pub fn is_fully_acyclic(inst: &Instance, dense: &[u32]) -> bool {
    is_forest(inst, &full_skeleton_edges(dense))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::DegreeList;

    fn single_edge(ku: &[u32], kv: &[u32], cap: u32) -> Instance {
        Instance::new(
            vec![DegreeList::new(ku.iter().copied())],
            vec![DegreeList::new(kv.iter().copied())],
            [Edge::new(1, 1, cap)],
        )
        .unwrap()
    }

    #[test]
    fn single_edge_factor() {
        let i = single_edge(&[1], &[1], 1);
        let phi: EdgeWeighting = [((1, 1), 1)].into_iter().collect();
        assert_eq!(verify_factor(&i, &phi), Ok(None));
    }

    #[test]
    fn zero_weight_fails_at_u1() {
        let i = single_edge(&[1], &[1], 1);
        let v = verify_factor(&i, &EdgeWeighting::new()).unwrap();
        assert_eq!(
            v,
            Some(Violation::DegreeNotInList {
                vertex: Vertex::u(1),
                degree: 0
            })
        );
    }

    #[test]
    fn over_capacity_reported_before_degrees() {
        let i = single_edge(&[2], &[1], 1);
        let phi: EdgeWeighting = [((1, 1), 2)].into_iter().collect();
        assert!(matches!(
            verify_factor(&i, &phi),
            Ok(Some(Violation::OverCapacity { weight: 2, .. }))
        ));
    }

    #[test]
    fn non_edge_is_structural() {
        let i = single_edge(&[1], &[1], 1);
        let phi: EdgeWeighting = [((1, 2), 1)].into_iter().collect();
        assert!(matches!(verify_factor(&i, &phi), Err(Error::Structural(_))));
    }

    #[test]
    fn zero_capacity_edge_forces_zero() {
        let i = single_edge(&[0, 1], &[0, 1], 0);
        assert_eq!(verify_factor(&i, &EdgeWeighting::new()), Ok(None));
        let phi: EdgeWeighting = [((1, 1), 1)].into_iter().collect();
        assert!(matches!(
            verify_factor(&i, &phi),
            Ok(Some(Violation::OverCapacity { .. }))
        ));
    }

    #[test]
    fn skeleton_views() {
        let i = Instance::new(
            vec![DegreeList::from([2]); 2],
            vec![DegreeList::from([2]); 2],
            [
                Edge::new(1, 1, 2),
                Edge::new(1, 2, 2),
                Edge::new(2, 1, 2),
                Edge::new(2, 2, 2),
            ],
        )
        .unwrap();
        let dense = [1, 1, 1, 1];
        assert_eq!(skeleton_edges(&i, &dense), vec![0, 1, 2, 3]);
        assert!(!is_acyclic(&i, &dense));
        let dense = [2, 0, 0, 2];
        assert!(skeleton_edges(&i, &dense).is_empty());
        assert_eq!(full_edges(&i, &dense), vec![0, 3]);
        assert!(is_fully_acyclic(&i, &dense));
    }
}
