//! Bipartite edge-weighted instances `(G, ρ, K)`.
//!
//! Vertices are identified by a side tag and a 1-based index that is dense on
//! each side. The canonical vertex order is `(side, index)` with the `U` side
//! first; edges are stored sorted by `(u, v)`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    U,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub side: Side,
    pub index: u32,
}

impl Vertex {
    pub const fn u(index: u32) -> Self {
        Vertex {
            side: Side::U,
            index,
        }
    }

    pub const fn v(index: u32) -> Self {
        Vertex {
            side: Side::V,
            index,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::U => write!(f, "u {}", self.index),
            Side::V => write!(f, "v {}", self.index),
        }
    }
}

/// A finite set of admissible degrees, kept sorted and deduplicated.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeList(Vec<u32>);

impl DegreeList {
    pub fn new(values: impl IntoIterator<Item = u32>) -> Self {
        let mut values: Vec<u32> = values.into_iter().collect();
        values.sort_unstable();
        values.dedup();
        DegreeList(values)
    }

    pub fn empty() -> Self {
        DegreeList(Vec::new())
    }

    pub fn singleton(value: u32) -> Self {
        DegreeList(vec![value])
    }

    /// `{lo, lo+1, …, hi}`.
    pub fn range(lo: u32, hi: u32) -> Self {
        DegreeList((lo..=hi).collect())
    }

    pub fn contains(&self, value: u32) -> bool {
        self.0.binary_search(&value).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn least(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn greatest(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    /// The single element of a one-element list.
    pub fn single(&self) -> Option<u32> {
        match self.0.as_slice() {
            [c] => Some(*c),
            _ => None,
        }
    }

    pub fn is_zero_only(&self) -> bool {
        self.0 == [0]
    }

    /// Smallest element `>= value`.
    pub fn first_at_least(&self, value: u32) -> Option<u32> {
        let pos = self.0.partition_point(|&c| c < value);
        self.0.get(pos).copied()
    }

    /// True iff some element lies in `[lo, hi]`.
    pub fn hits_window(&self, lo: u32, hi: u32) -> bool {
        self.first_at_least(lo).is_some_and(|c| c <= hi)
    }

    /// Elements `<= bound`.
    pub fn clamped(&self, bound: u32) -> Self {
        DegreeList(self.0.iter().copied().filter(|&c| c <= bound).collect())
    }

    /// `{c - shift : c ∈ self, c >= shift}`.
    pub fn shifted_down(&self, shift: u32) -> Self {
        DegreeList(
            self.0
                .iter()
                .filter_map(|&c| c.checked_sub(shift))
                .collect(),
        )
    }
}

impl FromIterator<u32> for DegreeList {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        DegreeList::new(iter)
    }
}

impl From<Vec<u32>> for DegreeList {
    fn from(values: Vec<u32>) -> Self {
        DegreeList::new(values)
    }
}

impl<const N: usize> From<[u32; N]> for DegreeList {
    fn from(values: [u32; N]) -> Self {
        DegreeList::new(values)
    }
}

impl fmt::Display for DegreeList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// An edge `u v` with capacity `ρ(uv)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    pub capacity: u32,
}

impl Edge {
    pub const fn new(u: u32, v: u32, capacity: u32) -> Self {
        Edge { u, v, capacity }
    }

    pub fn key(&self) -> (u32, u32) {
        (self.u, self.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    u_lists: Vec<DegreeList>,
    v_lists: Vec<DegreeList>,
    edges: Vec<Edge>,
}

impl Instance {
    /// Builds an instance with `u_lists.len()` vertices on the `U` side and
    /// `v_lists.len()` on the `V` side. Edges may come in any order.
    pub fn new(
        u_lists: Vec<DegreeList>,
        v_lists: Vec<DegreeList>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        let (m, k) = (u_lists.len() as u32, v_lists.len() as u32);
        for e in &edges {
            if e.u == 0 || e.u > m || e.v == 0 || e.v > k {
                return Err(Error::Structural(format!(
                    "edge ({}, {}) references an undeclared vertex",
                    e.u, e.v
                )));
            }
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0].key() == w[1].key()) {
            return Err(Error::Structural(format!(
                "duplicate edge ({}, {})",
                w[0].u, w[0].v
            )));
        }
        Ok(Instance {
            u_lists,
            v_lists,
            edges,
        })
    }

    pub fn empty() -> Self {
        Instance {
            u_lists: Vec::new(),
            v_lists: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// Same vertices and lists, different edge set. The edges are assumed to
    /// be valid for this vertex set and sorted.
    pub(crate) fn with_sorted_edges(&self, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0].key() < w[1].key()));
        Instance {
            u_lists: self.u_lists.clone(),
            v_lists: self.v_lists.clone(),
            edges,
        }
    }

    pub(crate) fn from_parts_unchecked(
        u_lists: Vec<DegreeList>,
        v_lists: Vec<DegreeList>,
        mut edges: Vec<Edge>,
    ) -> Self {
        edges.sort_unstable();
        Instance {
            u_lists,
            v_lists,
            edges,
        }
    }

    pub fn num_u(&self) -> usize {
        self.u_lists.len()
    }

    pub fn num_v(&self) -> usize {
        self.v_lists.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.u_lists.len() + self.v_lists.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn u_lists(&self) -> &[DegreeList] {
        &self.u_lists
    }

    pub fn v_lists(&self) -> &[DegreeList] {
        &self.v_lists
    }

    pub fn contains_vertex(&self, x: Vertex) -> bool {
        let n = match x.side {
            Side::U => self.num_u(),
            Side::V => self.num_v(),
        };
        x.index >= 1 && x.index as usize <= n
    }

    pub fn list(&self, x: Vertex) -> &DegreeList {
        match x.side {
            Side::U => &self.u_lists[x.index as usize - 1],
            Side::V => &self.v_lists[x.index as usize - 1],
        }
    }

    pub fn set_list(&mut self, x: Vertex, list: DegreeList) {
        match x.side {
            Side::U => self.u_lists[x.index as usize - 1] = list,
            Side::V => self.v_lists[x.index as usize - 1] = list,
        }
    }

    /// All vertices in canonical order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (1..=self.num_u() as u32)
            .map(Vertex::u)
            .chain((1..=self.num_v() as u32).map(Vertex::v))
    }

    /// Dense position of a vertex in canonical order (0-based).
    pub fn slot(&self, x: Vertex) -> usize {
        match x.side {
            Side::U => x.index as usize - 1,
            Side::V => self.num_u() + x.index as usize - 1,
        }
    }

    pub fn vertex_at(&self, slot: usize) -> Vertex {
        if slot < self.num_u() {
            Vertex::u(slot as u32 + 1)
        } else {
            Vertex::v((slot - self.num_u()) as u32 + 1)
        }
    }

    /// Canonical slots of both endpoints of edge `e`.
    pub fn endpoint_slots(&self, e: &Edge) -> (usize, usize) {
        (e.u as usize - 1, self.num_u() + e.v as usize - 1)
    }

    pub fn edge_index(&self, u: u32, v: u32) -> Option<usize> {
        self.edges.binary_search_by_key(&(u, v), Edge::key).ok()
    }

    /// Indices of the edges incident with each vertex, by slot.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.num_vertices()];
        for (i, e) in self.edges.iter().enumerate() {
            let (a, b) = self.endpoint_slots(e);
            inc[a].push(i);
            inc[b].push(i);
        }
        inc
    }

    /// `d_G(x)` for every slot.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_vertices()];
        for e in &self.edges {
            let (a, b) = self.endpoint_slots(e);
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// `d_ρ(x)` for every slot.
    pub fn capacity_degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.num_vertices()];
        for e in &self.edges {
            let (a, b) = self.endpoint_slots(e);
            deg[a] += e.capacity as u64;
            deg[b] += e.capacity as u64;
        }
        deg
    }

    pub fn degree(&self, x: Vertex) -> usize {
        self.edges
            .iter()
            .filter(|e| match x.side {
                Side::U => e.u == x.index,
                Side::V => e.v == x.index,
            })
            .count()
    }

    pub fn neighbors(&self, x: Vertex) -> Vec<Vertex> {
        self.edges
            .iter()
            .filter_map(|e| match x.side {
                Side::U if e.u == x.index => Some(Vertex::v(e.v)),
                Side::V if e.v == x.index => Some(Vertex::u(e.u)),
                _ => None,
            })
            .collect()
    }

    pub fn is_unit_capacity(&self) -> bool {
        self.edges.iter().all(|e| e.capacity == 1)
    }

    /// Every `U`-list has exactly one element.
    pub fn has_singleton_u_lists(&self) -> bool {
        self.u_lists.iter().all(|l| l.len() == 1)
    }

    /// Deletes a vertex with its incident edges. Higher indices on the same
    /// side move down by one.
    pub fn remove_vertex(&self, x: Vertex) -> Instance {
        let mut u_lists = self.u_lists.clone();
        let mut v_lists = self.v_lists.clone();
        let shift = |i: u32| if i > x.index { i - 1 } else { i };
        let edges = match x.side {
            Side::U => {
                u_lists.remove(x.index as usize - 1);
                self.edges
                    .iter()
                    .filter(|e| e.u != x.index)
                    .map(|e| Edge::new(shift(e.u), e.v, e.capacity))
                    .collect()
            }
            Side::V => {
                v_lists.remove(x.index as usize - 1);
                self.edges
                    .iter()
                    .filter(|e| e.v != x.index)
                    .map(|e| Edge::new(e.u, shift(e.v), e.capacity))
                    .collect()
            }
        };
        Instance::from_parts_unchecked(u_lists, v_lists, edges)
    }
}

/// An unweighted graph whose vertices carry a side tag. Edges may be given
/// in either orientation; one with both ends on the same side is rejected
/// when lifting.
#[derive(Debug, Clone, Default)]
pub struct SidedGraph {
    pub num_u: u32,
    pub num_v: u32,
    pub edges: Vec<(Vertex, Vertex)>,
}

/// Views an unweighted bipartite graph as an edge-weighted one with `ρ ≡ 1`.
/// `lists` is indexed like [`Instance::slot`]; missing entries are an error.
pub fn lift_unweighted(graph: &SidedGraph, lists: &[DegreeList]) -> Result<Instance> {
    let (m, k) = (graph.num_u as usize, graph.num_v as usize);
    if lists.len() != m + k {
        return Err(Error::Structural(format!(
            "expected {} degree lists, got {}",
            m + k,
            lists.len()
        )));
    }
    let mut edges = Vec::with_capacity(graph.edges.len());
    for &(a, b) in &graph.edges {
        let (u, v) = match (a.side, b.side) {
            (Side::U, Side::V) => (a, b),
            (Side::V, Side::U) => (b, a),
            _ => {
                return Err(Error::Structural(format!(
                    "edge {a} -- {b} joins two vertices of the same side; graph is not bipartite"
                )))
            }
        };
        edges.push(Edge::new(u.index, v.index, 1));
    }
    Instance::new(lists[..m].to_vec(), lists[m..].to_vec(), edges)
}
