//! Contraction of `c`-modules on the `U` side and the matching certificate
//! expansion.
//!
//! A `c`-module is a nonempty set of `U` vertices that all have list `{c}`,
//! the same neighborhood, and only unit-capacity edges. A module `M` is
//! replaced by a single vertex `u_M` with list `{c·|M|}` whose edges carry
//! capacity `|M|`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::factor::EdgeWeighting;
use crate::instance::{DegreeList, Edge, Instance, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Module {
    /// `U` indices of the members, ascending.
    pub members: Vec<u32>,
    pub c: u32,
    /// Index of `u_M` in the contracted instance.
    pub replacement: u32,
    /// `V` indices of the common neighborhood, ascending.
    pub neighbors: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub modules: Vec<Module>,
}

impl ModuleMap {
    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }
}

/// Groups `U` by `(c, neighborhood)`. Vertices with a non-unit incident
/// capacity, or `c = 0`, stay in singleton groups. Modules are numbered in
/// the order of their smallest member.
pub fn find_module_partition(inst: &Instance) -> Result<ModuleMap> {
    let mut nbrs: Vec<Vec<u32>> = vec![Vec::new(); inst.num_u()];
    let mut unit = vec![true; inst.num_u()];
    for e in inst.edges() {
        nbrs[e.u as usize - 1].push(e.v);
        unit[e.u as usize - 1] &= e.capacity == 1;
    }

    let mut groups: BTreeMap<(u32, &[u32]), usize> = BTreeMap::new();
    let mut modules: Vec<Module> = Vec::new();
    for (i, list) in inst.u_lists().iter().enumerate() {
        let u = i as u32 + 1;
        let c = list.single().ok_or_else(|| {
            Error::Precondition(format!("U vertex {u} has list {list}, expected exactly one value"))
        })?;
        if nbrs[i].is_empty() {
            return Err(Error::Precondition(format!("U vertex {u} is isolated; normalize first")));
        }
        let contractible = unit[i] && c >= 1;
        let existing = if contractible { groups.get(&(c, nbrs[i].as_slice())).copied() } else { None };
        match existing {
            Some(g) => modules[g].members.push(u),
            None => {
                if contractible {
                    groups.insert((c, nbrs[i].as_slice()), modules.len());
                }
                modules.push(Module {
                    members: vec![u],
                    c,
                    replacement: modules.len() as u32 + 1,
                    neighbors: nbrs[i].clone(),
                });
            }
        }
    }
    Ok(ModuleMap { modules })
}

/// Replaces each module by its representative. Singleton modules keep their
/// original capacities and list, so they are renamed but otherwise untouched.
pub fn contract_modules(inst: &Instance, mm: &ModuleMap) -> Instance {
    let mut u_lists = Vec::with_capacity(mm.len());
    let mut edges = Vec::new();
    for module in &mm.modules {
        let s = module.members.len() as u32;
        if s == 1 {
            let u = module.members[0];
            u_lists.push(inst.list(Vertex::u(u)).clone());
            edges.extend(
                inst.edges()
                    .iter()
                    .filter(|e| e.u == u)
                    .map(|e| Edge::new(module.replacement, e.v, e.capacity)),
            );
        } else {
            u_lists.push(DegreeList::singleton(module.c * s));
            edges.extend(module.neighbors.iter().map(|&v| Edge::new(module.replacement, v, s)));
        }
    }
    Instance::from_parts_unchecked(u_lists, inst.v_lists().to_vec(), edges)
}

/// Distributes each `φ'(u_M v_i)` over the members round-robin: with prefix
/// sums `S_i`, unit number `S_{i-1} + l` (for `1 <= l <= φ'(u_M v_i)`) goes
/// to member `u_j` with `j ≡ S_{i-1} + l (mod s)`. Every member then gets
/// weighted degree exactly `c`.
pub fn expand_factor(mm: &ModuleMap, contracted: &EdgeWeighting) -> Result<EdgeWeighting> {
    let mut phi = EdgeWeighting::new();
    let mut covered = 0usize;
    for module in &mm.modules {
        let s = module.members.len() as u64;
        let u_m = module.replacement;
        if s == 1 {
            for &v in &module.neighbors {
                phi.set(module.members[0], v, contracted.get(u_m, v));
            }
            covered += module.neighbors.len();
            continue;
        }
        let mut prefix = 0u64;
        for &v in &module.neighbors {
            let w = contracted.get(u_m, v) as u64;
            if w > s {
                return Err(Error::Precondition(format!(
                    "weight {w} on ({u_m}, {v}) exceeds module size {s}"
                )));
            }
            for l in 1..=w {
                let j = (prefix + l - 1) % s;
                phi.set(module.members[j as usize], v, 1);
            }
            prefix += w;
        }
        covered += module.neighbors.len();
        if prefix != module.c as u64 * s {
            return Err(Error::Precondition(format!(
                "u_M {u_m} has weighted degree {prefix}, expected {}",
                module.c as u64 * s
            )));
        }
    }
    let on_modules = mm
        .modules
        .iter()
        .flat_map(|m| m.neighbors.iter().map(move |&v| (m.replacement, v)))
        .collect::<std::collections::BTreeSet<_>>();
    debug_assert_eq!(on_modules.len(), covered);
    if let Some(((u, v), _)) = contracted.iter().find(|(k, _)| !on_modules.contains(k)) {
        return Err(Error::Structural(format!("weighting references non-edge ({u}, {v})")));
    }
    Ok(phi)
}
