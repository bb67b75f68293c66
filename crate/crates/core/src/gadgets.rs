//! Selection gadgets, double selection gadgets, and the reduction from
//! PARTITIONED CLIQUE.
//!
//! A selection gadget `G_{A,r}` is a complete bipartite graph between
//! `u_1, …, u_M` (`M = max A`) and a hub `v_0` plus outputs `v_1, …, v_r`,
//! with `K(u_i) = {0, r + 1}`, `K(v_0) = A` and `K(v_j) = {0, …, M}`. Each
//! `u_i` is either empty or adjacent to everything, so every output sees
//! the same degree, which the hub forces into `A`.
//!
//! Instance layouts:
//!
//! * selection gadget: `V` is hub then outputs; `U` is `u_1, …, u_M`.
//! * double selection gadget: `V` is lower hub, upper hub, `q`, lower
//!   outputs, upper outputs; `U` is the lower block then the upper block.
//! * clique reduction `H`: `V` is, for each part `i`, the lower hub, upper
//!   hub and `q_i` of `H_i`, followed by the shared outputs `h_{i,j}` for
//!   `i < j` in lexicographic order; `U` is, for each part, the lower block
//!   then the upper block.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::instance::{DegreeList, Edge, Instance, Vertex};

#[derive(Default)]
struct Builder {
    u_lists: Vec<DegreeList>,
    v_lists: Vec<DegreeList>,
    edges: Vec<Edge>,
}

impl Builder {
    fn vertex(&mut self, list: DegreeList) -> u32 {
        self.v_lists.push(list);
        self.v_lists.len() as u32
    }

    /// `count` new `U` vertices, each adjacent to all of `targets`.
    fn block(&mut self, count: u32, list: DegreeList, targets: &[u32]) {
        for _ in 0..count {
            self.u_lists.push(list.clone());
            let u = self.u_lists.len() as u32;
            self.edges.extend(targets.iter().map(|&v| Edge::new(u, v, 1)));
        }
    }

    fn finish(self) -> Instance {
        Instance::new(self.u_lists, self.v_lists, self.edges).expect("gadget edges are distinct and in range")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionGadget {
    pub instance: Instance,
    pub hub: Vertex,
    pub outputs: Vec<Vertex>,
    pub a: DegreeList,
    pub m: u32,
    pub r: u32,
}

fn check_a(a: &DegreeList) -> Result<u32> {
    a.greatest().ok_or_else(|| Error::Input("A must be nonempty".into()))
}

/// `G_{A,r}` for `r >= 1`.
pub fn selection_gadget(a: &DegreeList, r: u32) -> Result<SelectionGadget> {
    if r == 0 {
        return Err(Error::Input("a selection gadget needs r >= 1 outputs".into()));
    }
    selection_gadget_unchecked_r(a, r)
}

/// Like [`selection_gadget`] but also allows `r = 0`.
pub(crate) fn selection_gadget_unchecked_r(a: &DegreeList, r: u32) -> Result<SelectionGadget> {
    let m = check_a(a)?;
    let mut b = Builder::default();
    let hub = b.vertex(a.clone());
    let outputs: Vec<u32> = (0..r).map(|_| b.vertex(DegreeList::range(0, m))).collect();
    let targets: Vec<u32> = std::iter::once(hub).chain(outputs.iter().copied()).collect();
    b.block(m, DegreeList::from([0, r + 1]), &targets);
    Ok(SelectionGadget {
        instance: b.finish(),
        hub: Vertex::v(hub),
        outputs: outputs.into_iter().map(Vertex::v).collect(),
        a: a.clone(),
        m,
        r,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleSelectionGadget {
    pub instance: Instance,
    pub lower_hub: Vertex,
    pub upper_hub: Vertex,
    pub q: Vertex,
    pub lower_outputs: Vec<Vertex>,
    pub upper_outputs: Vec<Vertex>,
    pub a: DegreeList,
    /// `N = max A + 1`.
    pub n: u32,
    /// `A' = {Nα : α ∈ A}`.
    pub a_prime: DegreeList,
    pub r: u32,
    pub r_prime: u32,
}

fn scaled(a: &DegreeList, n: u32) -> DegreeList {
    a.iter().map(|x| n * x).collect()
}

/// `G_{A,r,r'}`: `G_{A,r+1}` and `G_{A',r'+1}` glued at their last outputs.
pub fn double_selection_gadget(a: &DegreeList, r: u32, r_prime: u32) -> Result<DoubleSelectionGadget> {
    let m = check_a(a)?;
    if m == 0 {
        return Err(Error::Input("a double selection gadget needs max A >= 1".into()));
    }
    let n = m + 1;
    let a_prime = scaled(a, n);
    let mut b = Builder::default();
    let lower_hub = b.vertex(a.clone());
    let upper_hub = b.vertex(a_prime.clone());
    let q = b.vertex(a.iter().map(|x| x + n * x).collect());
    let lower: Vec<u32> = (0..r).map(|_| b.vertex(DegreeList::range(0, m))).collect();
    let upper: Vec<u32> = (0..r_prime).map(|_| b.vertex(DegreeList::range(0, n * m))).collect();

    let lower_targets: Vec<u32> = std::iter::once(lower_hub).chain(lower.iter().copied()).chain([q]).collect();
    let upper_targets: Vec<u32> = std::iter::once(upper_hub).chain(upper.iter().copied()).chain([q]).collect();
    b.block(m, DegreeList::from([0, r + 2]), &lower_targets);
    b.block(n * m, DegreeList::from([0, r_prime + 2]), &upper_targets);

    Ok(DoubleSelectionGadget {
        instance: b.finish(),
        lower_hub: Vertex::v(lower_hub),
        upper_hub: Vertex::v(upper_hub),
        q: Vertex::v(q),
        lower_outputs: lower.into_iter().map(Vertex::v).collect(),
        upper_outputs: upper.into_iter().map(Vertex::v).collect(),
        a: a.clone(),
        n,
        a_prime,
        r,
        r_prime,
    })
}

/// A `k`-partite graph with parts `V_1, …, V_k` of size `n`. Edges are
/// stored as `((i, a), (j, b))` with `i < j`, meaning `v_a^i v_b^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionedGraph {
    k: u32,
    n: u32,
    edges: BTreeSet<((u32, u32), (u32, u32))>,
}

impl PartitionedGraph {
    /// Edges may be given in either orientation.
    pub fn new(k: u32, n: u32, edges: impl IntoIterator<Item = ((u32, u32), (u32, u32))>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (x, y) in edges {
            for (i, a) in [x, y] {
                if i == 0 || i > k || a == 0 || a > n {
                    return Err(Error::Input(format!("vertex v_{a}^{i} is outside k = {k}, n = {n}")));
                }
            }
            if x.0 == y.0 {
                return Err(Error::Input(format!(
                    "edge v_{}^{} v_{}^{} lies inside part {}",
                    x.1, x.0, y.1, y.0, x.0
                )));
            }
            let e = if x.0 < y.0 { (x, y) } else { (y, x) };
            if !set.insert(e) {
                return Err(Error::Input(format!("duplicate edge v_{}^{} v_{}^{}", x.1, x.0, y.1, y.0)));
            }
        }
        Ok(PartitionedGraph { k, n, edges: set })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = ((u32, u32), (u32, u32))> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, (i, a): (u32, u32), (j, b): (u32, u32)) -> bool {
        if i < j {
            self.edges.contains(&((i, a), (j, b)))
        } else {
            self.edges.contains(&((j, b), (i, a)))
        }
    }
}

pub fn parse_pclique(text: &str) -> Result<PartitionedGraph> {
    let mut header: Option<(u32, u32, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if toks.is_empty() || toks[0].starts_with('#') {
            continue;
        }
        let nums = |toks: &[&str]| -> Result<Vec<u32>> {
            toks.iter()
                .map(|t| t.parse::<u32>().map_err(|_| Error::parse(line, format!("expected a non-negative integer, found {t:?}"))))
                .collect()
        };
        match toks[0] {
            "p" => {
                if header.is_some() {
                    return Err(Error::parse(line, "second header"));
                }
                if toks.len() != 5 || toks[1] != "pclique" {
                    return Err(Error::parse(line, "expected `p pclique <k> <n> <m>`"));
                }
                let v = nums(&toks[2..])?;
                header = Some((v[0], v[1], v[2] as usize));
            }
            "e" => {
                let Some((k, n, _)) = header else {
                    return Err(Error::parse(line, "edge before header"));
                };
                if toks.len() != 5 {
                    return Err(Error::parse(line, "expected `e <i> <a> <j> <b>`"));
                }
                let v = nums(&toks[1..])?;
                let (i, a, j, b) = (v[0], v[1], v[2], v[3]);
                if i >= j {
                    return Err(Error::parse(line, format!("parts must satisfy i < j, got {i} and {j}")));
                }
                if i == 0 || j > k || a == 0 || a > n || b == 0 || b > n {
                    return Err(Error::parse(line, "vertex out of range"));
                }
                if !seen.insert((i, a, j, b)) {
                    return Err(Error::parse(line, "duplicate edge"));
                }
                edges.push(((i, a), (j, b)));
            }
            other => return Err(Error::parse(line, format!("unknown line type {other:?}"))),
        }
    }
    let (k, n, m) = header.ok_or_else(|| Error::parse(0, "missing header"))?;
    if edges.len() != m {
        return Err(Error::parse(0, format!("header announces {m} edges, found {}", edges.len())));
    }
    PartitionedGraph::new(k, n, edges)
}

pub fn serialize_pclique(g: &PartitionedGraph) -> String {
    let mut out = format!("p pclique {} {} {}\n", g.k, g.n, g.edges.len());
    for ((i, a), (j, b)) in g.edges() {
        writeln!(out, "e {i} {a} {j} {b}").unwrap();
    }
    out
}

/// The canonically first clique as `a_1, …, a_k` (vertex `v_{a_i}^i` in
/// part `i`), trying transversals in lexicographic order.
pub fn find_clique_bruteforce(g: &PartitionedGraph) -> Option<Vec<u32>> {
    if g.k == 0 {
        return Some(Vec::new());
    }
    if g.n == 0 {
        return None;
    }
    let k = g.k as usize;
    let mut pick = vec![1u32; k];
    loop {
        let ok = (0..k).all(|i| (i + 1..k).all(|j| g.has_edge((i as u32 + 1, pick[i]), (j as u32 + 1, pick[j]))));
        if ok {
            return Some(pick);
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            if pick[pos] < g.n {
                pick[pos] += 1;
                pick[pos + 1..].iter_mut().for_each(|x| *x = 1);
                break;
            }
        }
    }
}

/// `V`-index of `h_{i,j}` (`i < j`) in the reduction layout.
pub fn h_vertex(k: u32, i: u32, j: u32) -> Vertex {
    debug_assert!(1 <= i && i < j && j <= k);
    // pairs before (i, j): all pairs with first part < i, then j - i - 1
    let before = (1..i).map(|p| k - p).sum::<u32>() + (j - i - 1);
    Vertex::v(3 * k + before + 1)
}

/// `(lower hub, upper hub, q_i)` of `H_i` in the reduction layout.
pub fn part_hubs(i: u32) -> (Vertex, Vertex, Vertex) {
    (Vertex::v(3 * i - 2), Vertex::v(3 * i - 1), Vertex::v(3 * i))
}

/// Builds `H` from copies `H_i = G_{A, i-1, k-i}` with `A = {1, …, n}`;
/// the upper output of `H_i` for `j > i` and the lower output of `H_j` for
/// `i` are the same vertex `h_{i,j}`, with list
/// `{Nα + β : v_α^i v_β^j ∈ E(G)}`.
pub fn reduce_clique(g: &PartitionedGraph) -> Result<Instance> {
    let (k, n) = (g.k, g.n);
    if k < 2 || n < 1 {
        return Err(Error::Input(format!("the reduction needs k >= 2 and n >= 1, got k = {k}, n = {n}")));
    }
    let big_n = n + 1;
    let a = DegreeList::range(1, n);
    let mut b = Builder::default();
    for _ in 1..=k {
        b.vertex(a.clone());
        b.vertex(scaled(&a, big_n));
        b.vertex(a.iter().map(|x| x + big_n * x).collect());
    }
    for i in 1..=k {
        for j in i + 1..=k {
            let list: DegreeList = g
                .edges()
                .filter(|&((p, _), (q, _))| p == i && q == j)
                .map(|((_, alpha), (_, beta))| big_n * alpha + beta)
                .collect();
            let v = b.vertex(list);
            debug_assert_eq!(Vertex::v(v), h_vertex(k, i, j));
        }
    }
    for i in 1..=k {
        let (lower_hub, upper_hub, q) = part_hubs(i);
        let lower_targets: Vec<u32> = std::iter::once(lower_hub.index)
            .chain((1..i).map(|j| h_vertex(k, j, i).index))
            .chain([q.index])
            .collect();
        let upper_targets: Vec<u32> = std::iter::once(upper_hub.index)
            .chain((i + 1..=k).map(|j| h_vertex(k, i, j).index))
            .chain([q.index])
            .collect();
        b.block(n, DegreeList::from([0, i + 1]), &lower_targets);
        b.block(big_n * n, DegreeList::from([0, k - i + 2]), &upper_targets);
    }
    Ok(b.finish())
}

/// `k · n(n + 2)`, the `U`-side size of [`reduce_clique`]'s output.
pub fn reduction_u_count(k: u32, n: u32) -> u64 {
    k as u64 * n as u64 * (n as u64 + 2)
}
