//! Normalization: `K(x) ∉ {∅, {0}}` everywhere and `K(x) ⊆ [0, d_ρ(x)]`.

use crate::factor::EdgeWeighting;
use crate::instance::{DegreeList, Edge, Instance, Side, Vertex};

/// The instance has no factor because `vertex` ended up with an empty list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rejected {
    pub vertex: Vertex,
}

/// A normalized instance together with the index maps back to the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub instance: Instance,
    /// `u_origin[i - 1]` is the input index of normalized `U` vertex `i`.
    pub u_origin: Vec<u32>,
    pub v_origin: Vec<u32>,
}

impl Normalized {
    /// Carries a factor of the normalized instance back to the input
    /// instance; deleted edges get weight 0.
    pub fn inflate(&self, phi: &EdgeWeighting) -> EdgeWeighting {
        phi.iter()
            .map(|((u, v), w)| {
                (
                    (self.u_origin[u as usize - 1], self.v_origin[v as usize - 1]),
                    w,
                )
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.u_origin.iter().copied().eq(1..=self.u_origin.len() as u32)
            && self.v_origin.iter().copied().eq(1..=self.v_origin.len() as u32)
    }
}

/// Clamps every list to `[0, d_ρ(x)]`, rejects on an empty list, and
/// deletes every vertex whose list is `{0}`. Deleting lowers the neighbors'
/// `d_ρ`, so this repeats until nothing changes.
pub fn normalize(inst: &Instance) -> Result<Normalized, Rejected> {
    let mut alive = vec![true; inst.num_vertices()];
    let mut lists: Vec<DegreeList> = inst.vertices().map(|x| inst.list(x).clone()).collect();
    loop {
        let mut cap_deg = vec![0u64; inst.num_vertices()];
        for e in inst.edges() {
            let (a, b) = inst.endpoint_slots(e);
            if alive[a] && alive[b] {
                cap_deg[a] += e.capacity as u64;
                cap_deg[b] += e.capacity as u64;
            }
        }
        let mut changed = false;
        for s in 0..lists.len() {
            if !alive[s] {
                continue;
            }
            let bound = u32::try_from(cap_deg[s]).unwrap_or(u32::MAX);
            if lists[s].greatest().is_some_and(|m| m > bound) {
                lists[s] = lists[s].clamped(bound);
            }
            if lists[s].is_empty() {
                return Err(Rejected {
                    vertex: inst.vertex_at(s),
                });
            }
            if lists[s].is_zero_only() {
                alive[s] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let m = inst.num_u();
    let u_origin: Vec<u32> = (0..m).filter(|&s| alive[s]).map(|s| s as u32 + 1).collect();
    let v_origin: Vec<u32> = (m..inst.num_vertices())
        .filter(|&s| alive[s])
        .map(|s| (s - m) as u32 + 1)
        .collect();
    let renumber = |origin: &[u32]| {
        let mut map = vec![0u32; origin.last().map_or(0, |&x| x as usize)];
        for (new, &old) in origin.iter().enumerate() {
            map[old as usize - 1] = new as u32 + 1;
        }
        map
    };
    let (u_new, v_new) = (renumber(&u_origin), renumber(&v_origin));
    let edges: Vec<Edge> = inst
        .edges()
        .iter()
        .filter(|e| {
            let (a, b) = inst.endpoint_slots(e);
            alive[a] && alive[b]
        })
        .map(|e| Edge::new(u_new[e.u as usize - 1], v_new[e.v as usize - 1], e.capacity))
        .collect();
    let pick = |side: Side, origin: &[u32]| -> Vec<DegreeList> {
        origin
            .iter()
            .map(|&i| lists[inst.slot(Vertex { side, index: i })].clone())
            .collect()
    };
    let instance = Instance::from_parts_unchecked(pick(Side::U, &u_origin), pick(Side::V, &v_origin), edges);
    Ok(Normalized {
        instance,
        u_origin,
        v_origin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lists(ls: &[&[u32]]) -> Vec<DegreeList> {
        ls.iter().map(|l| DegreeList::new(l.iter().copied())).collect()
    }

    #[test]
    fn empty_list_rejects() {
        let i = Instance::new(lists(&[&[1]]), lists(&[&[]]), [Edge::new(1, 1, 1)]).unwrap();
        assert_eq!(normalize(&i), Err(Rejected { vertex: Vertex::v(1) }));
    }

    #[test]
    fn zero_list_vertex_deleted() {
        // u1 -- v1 -- u2 -- v2, K(v1) = {0}: v1 goes, then u1 is isolated,
        // clamped to {0} and also goes.
        let i = Instance::new(
            lists(&[&[0, 1], &[0, 1]]),
            lists(&[&[0], &[0, 1]]),
            [Edge::new(1, 1, 1), Edge::new(2, 1, 1), Edge::new(2, 2, 1)],
        )
        .unwrap();
        let n = normalize(&i).unwrap();
        assert_eq!(n.instance.num_u(), 1);
        assert_eq!(n.instance.num_v(), 1);
        assert_eq!(n.u_origin, vec![2]);
        assert_eq!(n.v_origin, vec![2]);
        assert_eq!(n.instance.edges(), &[Edge::new(1, 1, 1)]);
        assert_eq!(n.instance.u_lists()[0].as_slice(), &[0, 1]);
    }

    #[test]
    fn single_zero_vertex_with_its_edge() {
        let i = Instance::new(lists(&[&[1, 2]]), lists(&[&[0], &[1]]), [Edge::new(1, 1, 1), Edge::new(1, 2, 1)])
            .unwrap();
        let n = normalize(&i).unwrap();
        assert_eq!(n.instance.num_v(), 1);
        assert_eq!(n.instance.edges().len(), 1);
        assert_eq!(n.instance.u_lists()[0].as_slice(), &[1]);
    }

    #[test]
    fn normalized_input_unchanged() {
        let i = Instance::new(lists(&[&[1]]), lists(&[&[1]]), [Edge::new(1, 1, 1)]).unwrap();
        let n = normalize(&i).unwrap();
        assert_eq!(n.instance, i);
        assert!(n.is_identity());
    }

    #[test]
    fn clamps_to_capacity_degree() {
        let i = Instance::new(lists(&[&[1, 5]]), lists(&[&[2, 3]]), [Edge::new(1, 1, 2)]).unwrap();
        let n = normalize(&i).unwrap();
        assert_eq!(n.instance.u_lists()[0].as_slice(), &[1]);
        assert_eq!(n.instance.v_lists()[0].as_slice(), &[2]);
        let i = Instance::new(lists(&[&[3]]), lists(&[&[1]]), [Edge::new(1, 1, 2)]).unwrap();
        assert_eq!(normalize(&i), Err(Rejected { vertex: Vertex::u(1) }));
    }

    #[test]
    fn inflate_maps_back() {
        let i = Instance::new(
            lists(&[&[0], &[1]]),
            lists(&[&[0], &[1]]),
            [Edge::new(1, 1, 1), Edge::new(2, 2, 1)],
        )
        .unwrap();
        let n = normalize(&i).unwrap();
        let phi: EdgeWeighting = [((1, 1), 1)].into_iter().collect();
        assert_eq!(n.inflate(&phi).iter().collect::<Vec<_>>(), vec![((2, 2), 1)]);
    }
}
