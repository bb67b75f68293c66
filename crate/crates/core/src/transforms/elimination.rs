//! Elimination of degree-0 and degree-1 vertices.
//!
//! Removing a leaf `v` with neighbor `u` replaces `K(u)` by
//! `K'(u) = {c_u − c_v : c_u ∈ K(u), c_v ∈ K(v), c_v <= min(ρ(uv), c_u)}`.
//! The rule as such only decides; to rebuild a factor afterwards each
//! `c' ∈ K'(u)` keeps the pairs `(c_u, c_v)` that produced it.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::instance::{DegreeList, Instance, Vertex};

/// Witness pairs `(c_u, c_v)` per value of `K'(u)`, each list sorted by
/// `c_v` then `c_u`.
pub type Witnesses = BTreeMap<u32, Vec<(u32, u32)>>;

/// `K'(u)` and its witnesses for a leaf with list `leaf` hanging off a
/// vertex with list `hub` through an edge of capacity `capacity`.
pub fn leaf_update(hub: &DegreeList, leaf: &DegreeList, capacity: u32) -> (DegreeList, Witnesses) {
    let mut witnesses = Witnesses::new();
    for c_v in leaf.iter() {
        if c_v > capacity {
            break;
        }
        for c_u in hub.iter().filter(|&c_u| c_u >= c_v) {
            witnesses.entry(c_u - c_v).or_default().push((c_u, c_v));
        }
    }
    let list = DegreeList::new(witnesses.keys().copied());
    (list, witnesses)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EliminationStep {
    /// An isolated vertex with `0 ∈ K` was deleted.
    Isolated { vertex: Vertex },
    /// `vertex` had degree 1 with `neighbor` across an edge of
    /// capacity `capacity`.
    Leaf {
        vertex: Vertex,
        neighbor: Vertex,
        capacity: u32,
        witnesses: Witnesses,
    },
}

impl EliminationStep {
    pub fn vertex(&self) -> Vertex {
        match self {
            EliminationStep::Isolated { vertex } | EliminationStep::Leaf { vertex, .. } => *vertex,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EliminationTrace {
    pub steps: Vec<EliminationStep>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleOutcome {
    /// The instance with the vertex removed (higher indices on its side shift
    /// down by one).
    Reduced(Instance),
    Reject,
}

/// First degree-0 vertex in canonical order, if any.
pub fn find_isolated(inst: &Instance) -> Option<Vertex> {
    let deg = inst.degrees();
    deg.iter().position(|&d| d == 0).map(|s| inst.vertex_at(s))
}

/// First degree-1 vertex in canonical order, if any.
pub fn find_leaf(inst: &Instance) -> Option<Vertex> {
    let deg = inst.degrees();
    deg.iter().position(|&d| d == 1).map(|s| inst.vertex_at(s))
}

fn check_vertex(inst: &Instance, x: Vertex) -> Result<()> {
    if inst.contains_vertex(x) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("vertex {x} not in instance")))
    }
}

/// Deletes the isolated vertex `x`, or rejects if `0 ∉ K(x)`.
pub fn rule_degree0(inst: &Instance, x: Vertex) -> Result<RuleOutcome> {
    check_vertex(inst, x)?;
    let d = inst.degree(x);
    if d != 0 {
        return Err(Error::Precondition(format!("vertex {x} has degree {d}, expected 0")));
    }
    if !inst.list(x).contains(0) {
        return Ok(RuleOutcome::Reject);
    }
    Ok(RuleOutcome::Reduced(inst.remove_vertex(x)))
}

/// Deletes the leaf `x` and folds its list into its neighbor `u`.
/// `K'(u) = ∅` is returned as is; it makes the result a no-instance.
pub fn rule_degree1(inst: &Instance, x: Vertex) -> Result<(Instance, EliminationStep)> {
    check_vertex(inst, x)?;
    let nbrs = inst.neighbors(x);
    let [neighbor] = nbrs.as_slice() else {
        return Err(Error::Precondition(format!("vertex {x} has degree {}, expected 1", nbrs.len())));
    };
    let (u, v) = match x.side {
        crate::instance::Side::U => (x.index, neighbor.index),
        crate::instance::Side::V => (neighbor.index, x.index),
    };
    let capacity = inst.edges()[inst.edge_index(u, v).expect("neighbor edge exists")].capacity;
    let (list, witnesses) = leaf_update(inst.list(*neighbor), inst.list(x), capacity);
    let mut reduced = inst.clone();
    reduced.set_list(*neighbor, list);
    let reduced = reduced.remove_vertex(x);
    Ok((
        reduced,
        EliminationStep::Leaf {
            vertex: x,
            neighbor: *neighbor,
            capacity,
            witnesses,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Edge;

    fn edge(ku: &[u32], kv: &[u32], cap: u32) -> Instance {
        Instance::new(
            vec![DegreeList::new(ku.iter().copied())],
            vec![DegreeList::new(kv.iter().copied())],
            [Edge::new(1, 1, cap)],
        )
        .unwrap()
    }

    #[test]
    fn leaf_formula_examples() {
        let (l, _) = leaf_update(&DegreeList::from([2, 3]), &DegreeList::from([1, 2]), 1);
        assert_eq!(l.as_slice(), &[1, 2]);

        let (l, w) = leaf_update(&DegreeList::from([1]), &DegreeList::from([1]), 1);
        assert_eq!(l.as_slice(), &[0]);
        assert_eq!(w[&0], vec![(1, 1)]);

        let (l, _) = leaf_update(&DegreeList::from([1, 2]), &DegreeList::from([2]), 1);
        assert!(l.is_empty());
    }

    #[test]
    fn witnesses_sorted_by_leaf_degree_then_hub() {
        let (l, w) = leaf_update(&DegreeList::from([1, 2, 3]), &DegreeList::from([0, 1, 2]), 2);
        assert_eq!(l.as_slice(), &[0, 1, 2, 3]);
        assert_eq!(w[&1], vec![(1, 0), (2, 1), (3, 2)]);
        assert_eq!(w[&0], vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn rule_degree1_on_edge() {
        let i = edge(&[2, 3], &[1, 2], 1);
        let (r, step) = rule_degree1(&i, Vertex::v(1)).unwrap();
        assert_eq!(r.num_v(), 0);
        assert_eq!(r.list(Vertex::u(1)).as_slice(), &[1, 2]);
        assert_eq!(step.vertex(), Vertex::v(1));
    }

    #[test]
    fn rule_degree0_cases() {
        let i = Instance::new(vec![DegreeList::from([0, 2])], vec![], []).unwrap();
        assert_eq!(rule_degree0(&i, Vertex::u(1)).unwrap(), RuleOutcome::Reduced(Instance::empty()));
        let i = Instance::new(vec![DegreeList::from([1])], vec![], []).unwrap();
        assert_eq!(rule_degree0(&i, Vertex::u(1)).unwrap(), RuleOutcome::Reject);
        let i = edge(&[1], &[1], 1);
        assert_eq!(find_isolated(&i), None);
        assert!(matches!(rule_degree0(&i, Vertex::u(1)), Err(Error::Precondition(_))));
    }

    #[test]
    fn rule_degree1_precondition() {
        let i = Instance::new(
            vec![DegreeList::from([2])],
            vec![DegreeList::from([1]); 2],
            [Edge::new(1, 1, 1), Edge::new(1, 2, 1)],
        )
        .unwrap();
        assert!(matches!(rule_degree1(&i, Vertex::u(1)), Err(Error::Precondition(_))));
        assert_eq!(find_leaf(&i), Some(Vertex::v(1)));
    }
}
