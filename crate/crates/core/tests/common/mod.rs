#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use genfactor::egcc::{Assignment, EgccModel};
use genfactor::factor::{is_factor, weighted_degrees};
use genfactor::{DegreeList, Edge, EdgeWeighting, Instance};
use petgraph::unionfind::UnionFind;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

/// The value graph pictured with variables `u..z` and values `a..e`; the
/// cards are the multiplicities of the pictured assignment.
pub const PICTURED_MODEL: &str = r#"{
  "variables": {
    "u": ["a", "b"], "v": ["a", "c"], "w": ["b", "d"],
    "x": ["c", "d"], "y": ["d", "e"], "z": ["b", "e"]
  },
  "cards": { "a": [0], "b": [2], "c": [1], "d": [2], "e": [1] }
}"#;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every unit-capacity instance with `|U| <= max_u`, `|V| <= max_v`,
/// `K(u) ∈ {{1}, {2}}` and `K(v) ⊆ {0, 1, 2, 3}`.
pub fn exhaustive_family(max_u: u32, max_v: u32) -> impl Iterator<Item = Instance> {
    (0..=max_u).flat_map(move |m| (0..=max_v).flat_map(move |k| family_of_shape(m, k)))
}

pub fn family_of_shape(m: u32, k: u32) -> impl Iterator<Item = Instance> {
    let pairs: Vec<(u32, u32)> = (1..=m).flat_map(|u| (1..=k).map(move |v| (u, v))).collect();
    let graphs = 1u64 << pairs.len();
    let u_choices = 1u64 << m;
    let v_choices = 1u64 << (4 * k);
    (0..graphs).flat_map(move |g| {
        let pairs = pairs.clone();
        (0..u_choices).flat_map(move |uc| {
            let pairs = pairs.clone();
            (0..v_choices).map(move |vc| {
                let edges = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| g >> i & 1 == 1)
                    .map(|(_, &(u, v))| Edge::new(u, v, 1));
                let u_lists = (0..m).map(|i| DegreeList::singleton(1 + (uc >> i & 1) as u32)).collect();
                let v_lists = (0..k)
                    .map(|j| {
                        let bits = vc >> (4 * j) & 0xf;
                        (0..4u32).filter(|c| bits >> c & 1 == 1).collect()
                    })
                    .collect();
                Instance::new(u_lists, v_lists, edges).unwrap()
            })
        })
    })
}

/// A random subset of `0..=hi` with 1 to `max_len` elements.
pub fn random_list(rng: &mut impl Rng, hi: u32, max_len: usize) -> DegreeList {
    let mut pool: Vec<u32> = (0..=hi).collect();
    pool.shuffle(rng);
    let len = rng.gen_range(1..=max_len.min(pool.len()));
    pool.truncate(len);
    DegreeList::new(pool)
}

pub struct Shape {
    pub max_u: u32,
    pub max_v: u32,
    pub max_cap: u32,
    pub edge_prob: f64,
    /// Singleton `U`-lists instead of general ones.
    pub singleton_u: bool,
    /// Max length of general lists.
    pub max_list: usize,
}

/// A random instance. Half the time the lists are planted around the
/// degrees of a random weighting so that yes-instances are common.
pub fn random_instance(rng: &mut impl Rng, shape: &Shape) -> Instance {
    let m = rng.gen_range(1..=shape.max_u);
    let k = rng.gen_range(1..=shape.max_v);
    let mut edges = Vec::new();
    for u in 1..=m {
        for v in 1..=k {
            if rng.gen_bool(shape.edge_prob) {
                edges.push(Edge::new(u, v, rng.gen_range(1..=shape.max_cap)));
            }
        }
    }
    let skeleton = Instance::new(
        vec![DegreeList::empty(); m as usize],
        vec![DegreeList::empty(); k as usize],
        edges.clone(),
    )
    .unwrap();
    let cap_deg = skeleton.capacity_degrees();
    let planted: Option<Vec<u64>> = rng.gen_bool(0.5).then(|| {
        let dense: Vec<u32> = edges.iter().map(|e| rng.gen_range(0..=e.capacity)).collect();
        weighted_degrees(&skeleton, &dense)
    });
    let mut lists = Vec::new();
    for s in 0..(m + k) as usize {
        let hi = cap_deg[s] as u32 + 1;
        let is_u = s < m as usize;
        let list = if is_u && shape.singleton_u {
            match &planted {
                Some(d) => DegreeList::singleton(d[s] as u32),
                None => DegreeList::singleton(rng.gen_range(0..=hi)),
            }
        } else {
            let mut l: Vec<u32> = random_list(rng, hi, shape.max_list).as_slice().to_vec();
            if let Some(d) = &planted {
                l[0] = d[s] as u32;
            }
            DegreeList::new(l)
        };
        lists.push(list);
    }
    let v_lists = lists.split_off(m as usize);
    Instance::new(lists, v_lists, edges).unwrap()
}

/// A random forest on at most `max_vertices` vertices with `ρ <= max_cap`
/// and lists of length at most 3.
pub fn random_forest(rng: &mut impl Rng, max_vertices: u32, max_cap: u32) -> Instance {
    let total = rng.gen_range(2..=max_vertices);
    let m = rng.gen_range(1..total);
    let k = total - m;
    let mut uf = UnionFind::<usize>::new(total as usize);
    let mut edges = Vec::new();
    let tries = rng.gen_range(0..=2 * total);
    for _ in 0..tries {
        let u = rng.gen_range(1..=m);
        let v = rng.gen_range(1..=k);
        if uf.union((u - 1) as usize, (m + v - 1) as usize) {
            edges.push(Edge::new(u, v, rng.gen_range(0..=max_cap)));
        }
    }
    let skeleton = Instance::new(
        vec![DegreeList::empty(); m as usize],
        vec![DegreeList::empty(); k as usize],
        edges.clone(),
    )
    .unwrap();
    let cap_deg = skeleton.capacity_degrees();
    let planted = rng.gen_bool(0.5).then(|| {
        let dense: Vec<u32> = edges.iter().map(|e| rng.gen_range(0..=e.capacity)).collect();
        weighted_degrees(&skeleton, &dense)
    });
    let mut lists: Vec<DegreeList> = (0..total as usize)
        .map(|s| {
            let mut l = random_list(rng, cap_deg[s] as u32 + 1, 3).as_slice().to_vec();
            if let Some(d) = &planted {
                l[0] = d[s] as u32;
            }
            DegreeList::new(l)
        })
        .collect();
    let v_lists = lists.split_off(m as usize);
    Instance::new(lists, v_lists, edges).unwrap()
}

/// Every weight vector in `∏ [0, ρ(e)]` that is a factor, in lexicographic
/// order. Exponential in `|E|`; only for tiny instances.
pub fn naive_factors(inst: &Instance) -> Vec<EdgeWeighting> {
    let caps: Vec<u32> = inst.edges().iter().map(|e| e.capacity).collect();
    let mut w = vec![0u32; caps.len()];
    let mut out = Vec::new();
    loop {
        let phi = EdgeWeighting::from_dense(inst, &w);
        if is_factor(inst, &phi) {
            out.push(phi);
        }
        let mut i = caps.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if w[i] < caps[i] {
                w[i] += 1;
                w[i + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
        }
    }
}

pub fn dense(inst: &Instance, phi: &EdgeWeighting) -> Vec<u32> {
    phi.to_dense(inst).unwrap()
}

/// Tries all assignments in the product of the domains.
pub fn enumerate_consistent(m: &EgccModel) -> bool {
    let vars: Vec<&str> = m.variables().collect();
    let domains: Vec<Vec<&String>> = vars.iter().map(|x| m.domain(x).unwrap().iter().collect()).collect();
    let mut pick = vec![0usize; vars.len()];
    loop {
        let a = Assignment(
            vars.iter()
                .zip(&pick)
                .zip(&domains)
                .map(|((x, &i), d)| (x.to_string(), d[i].clone()))
                .collect(),
        );
        if a.satisfies(m) {
            return true;
        }
        let mut p = vars.len();
        loop {
            if p == 0 {
                return false;
            }
            p -= 1;
            if pick[p] + 1 < domains[p].len() {
                pick[p] += 1;
                pick[p + 1..].iter_mut().for_each(|i| *i = 0);
                break;
            }
        }
    }
}

/// A model with at most 6 variables and 4 values; most values get a
/// random card.
pub fn random_model(r: &mut impl Rng) -> EgccModel {
    let nx = r.gen_range(1..=6usize);
    let nd = r.gen_range(1..=4usize);
    let values: Vec<String> = (0..nd).map(|i| format!("d{i}")).collect();
    let mut variables = BTreeMap::new();
    for i in 0..nx {
        let mut dom = BTreeSet::new();
        dom.insert(values[r.gen_range(0..nd)].clone());
        for d in &values {
            if r.gen_bool(0.4) {
                dom.insert(d.clone());
            }
        }
        variables.insert(format!("x{i}"), dom);
    }
    let used: BTreeSet<String> = variables.values().flatten().cloned().collect();
    let mut cards = BTreeMap::new();
    for d in used {
        if r.gen_bool(0.8) {
            cards.insert(d, random_list(r, nx as u32, 3));
        }
    }
    EgccModel::new(variables, cards).unwrap()
}
