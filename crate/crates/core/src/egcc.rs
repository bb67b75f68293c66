//! Extended global cardinality constraints and their value graphs.
//!
//! A model assigns each variable a domain of value names and each value a
//! set of allowed multiplicities. Model files are JSON:
//!
//! ```json
//! {
//!   "variables": { "x": ["a", "b"], "y": ["b"] },
//!   "cards":     { "a": [0, 1], "b": [1, 2] }
//! }
//! ```
//!
//! Key order does not matter. Duplicate keys, duplicate entries inside an
//! array, unknown top-level keys, empty domains, cards for values that occur
//! in no domain, and names used both as a variable and as a value are all
//! rejected. A value without a `cards` entry may be used any number of times.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::marker::PhantomData;

use serde::de::{Deserializer, MapAccess, Visitor};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::factor::{Decision, EdgeWeighting};
use crate::fpt::{solve_singleton_ones, SolveOptions};
use crate::instance::{DegreeList, Edge, Instance};

/// A JSON object that refuses repeated keys.
struct UniqueMap<V>(BTreeMap<String, V>);

impl<'de, V: Deserialize<'de>> Deserialize<'de> for UniqueMap<V> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct Unique<V>(PhantomData<V>);
        impl<'de, V: Deserialize<'de>> Visitor<'de> for Unique<V> {
            type Value = UniqueMap<V>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object with distinct keys")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<Self::Value, A::Error> {
                let mut map = BTreeMap::new();
                while let Some((k, v)) = access.next_entry::<String, V>()? {
                    if map.contains_key(&k) {
                        return Err(serde::de::Error::custom(format!("duplicate key {k:?}")));
                    }
                    map.insert(k, v);
                }
                Ok(UniqueMap(map))
            }
        }
        d.deserialize_map(Unique(PhantomData))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    variables: UniqueMap<Vec<String>>,
    #[serde(default = "no_cards")]
    cards: UniqueMap<Vec<u32>>,
}

fn no_cards() -> UniqueMap<Vec<u32>> {
    UniqueMap(BTreeMap::new())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgccModel {
    variables: BTreeMap<String, BTreeSet<String>>,
    cards: BTreeMap<String, DegreeList>,
}

impl EgccModel {
    pub fn new(
        variables: BTreeMap<String, BTreeSet<String>>,
        cards: BTreeMap<String, DegreeList>,
    ) -> Result<Self> {
        if let Some((x, _)) = variables.iter().find(|(_, d)| d.is_empty()) {
            return Err(Error::Model(format!("variable {x:?} has an empty domain")));
        }
        let values: BTreeSet<&String> = variables.values().flatten().collect();
        if let Some(x) = variables.keys().find(|x| values.contains(x)) {
            return Err(Error::Model(format!("{x:?} is both a variable and a value")));
        }
        if let Some(d) = cards.keys().find(|d| !values.contains(d)) {
            return Err(Error::Model(format!("card given for {d:?}, which is in no domain")));
        }
        Ok(EgccModel { variables, cards })
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.variables.keys().map(String::as_str)
    }

    pub fn domain(&self, x: &str) -> Option<&BTreeSet<String>> {
        self.variables.get(x)
    }

    /// All values, sorted.
    pub fn values(&self) -> Vec<&str> {
        let set: BTreeSet<&str> = self.variables.values().flatten().map(String::as_str).collect();
        set.into_iter().collect()
    }

    /// `K(d)`, defaulting to `{0, …, |X|}`.
    pub fn card(&self, d: &str) -> DegreeList {
        self.cards
            .get(d)
            .cloned()
            .unwrap_or_else(|| DegreeList::range(0, self.variables.len() as u32))
    }
}

fn reject_duplicates<T: Ord + fmt::Debug + Clone>(what: &str, items: &[T]) -> Result<BTreeSet<T>> {
    let mut set = BTreeSet::new();
    for item in items {
        if !set.insert(item.clone()) {
            return Err(Error::Model(format!("{what} repeats {item:?}")));
        }
    }
    Ok(set)
}

pub fn parse_model(text: &str) -> Result<EgccModel> {
    let file: ModelFile = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    let mut variables = BTreeMap::new();
    for (x, domain) in file.variables.0 {
        let set = reject_duplicates(&format!("domain of {x:?}"), &domain)?;
        variables.insert(x, set);
    }
    let mut cards = BTreeMap::new();
    for (d, list) in file.cards.0 {
        let set = reject_duplicates(&format!("card of {d:?}"), &list)?;
        cards.insert(d, DegreeList::new(set));
    }
    EgccModel::new(variables, cards)
}

/// Writes the model back in the documented JSON layout.
pub fn serialize_model(m: &EgccModel) -> String {
    let variables: BTreeMap<&String, Vec<&String>> =
        m.variables.iter().map(|(x, d)| (x, d.iter().collect())).collect();
    let cards: BTreeMap<&String, &[u32]> = m.cards.iter().map(|(d, l)| (d, l.as_slice())).collect();
    let doc = serde_json::json!({ "variables": variables, "cards": cards });
    serde_json::to_string_pretty(&doc).expect("maps of strings serialize")
}

/// Variables form `U` and values form `V`, both in sorted name order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueGraph {
    pub instance: Instance,
    pub variables: Vec<String>,
    pub values: Vec<String>,
}

pub fn build_value_graph(m: &EgccModel) -> Result<ValueGraph> {
    let variables: Vec<String> = m.variables.keys().cloned().collect();
    let values: Vec<String> = m.values().into_iter().map(str::to_owned).collect();
    let value_index: BTreeMap<&str, u32> = values.iter().enumerate().map(|(j, d)| (d.as_str(), j as u32 + 1)).collect();
    let mut edges = Vec::new();
    for (i, x) in variables.iter().enumerate() {
        let domain = &m.variables[x];
        if domain.is_empty() {
            return Err(Error::Model(format!("variable {x:?} has an empty domain")));
        }
        edges.extend(domain.iter().map(|d| Edge::new(i as u32 + 1, value_index[d.as_str()], 1)));
    }
    let instance = Instance::new(
        vec![DegreeList::singleton(1); variables.len()],
        values.iter().map(|d| m.card(d)).collect(),
        edges,
    )?;
    Ok(ValueGraph {
        instance,
        variables,
        values,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(pub BTreeMap<String, String>);

impl Assignment {
    pub fn get(&self, x: &str) -> Option<&str> {
        self.0.get(x).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.0.iter().map(|(x, d)| (x.as_str(), d.as_str()))
    }

    /// Checks totality, domains and multiplicities by direct counting.
    pub fn satisfies(&self, m: &EgccModel) -> bool {
        if !self.0.keys().eq(m.variables.keys()) {
            return false;
        }
        let mut uses: BTreeMap<&str, u32> = m.values().into_iter().map(|d| (d, 0)).collect();
        for (x, d) in self.iter() {
            if !m.variables[x].contains(d) {
                return false;
            }
            *uses.get_mut(d).expect("domain values are model values") += 1;
        }
        uses.iter().all(|(d, &n)| m.card(d).contains(n))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Consistency {
    Consistent(Assignment),
    Inconsistent,
}

/// Reads the assignment off a factor of the value graph: each variable takes
/// the value on its one edge of weight 1.
pub fn factor_to_assignment(g: &ValueGraph, phi: &EdgeWeighting) -> Result<Assignment> {
    let mut chosen: Vec<Vec<u32>> = vec![Vec::new(); g.variables.len()];
    for ((u, v), w) in phi.iter() {
        if g.instance.edge_index(u, v).is_none() {
            return Err(Error::Structural(format!("({u}, {v}) is not an edge of the value graph")));
        }
        let slot = chosen
            .get_mut(u as usize - 1)
            .ok_or_else(|| Error::Structural(format!("no variable {u}")))?;
        slot.extend(std::iter::repeat_n(v, w as usize));
    }
    let mut out = BTreeMap::new();
    for (x, vs) in g.variables.iter().zip(chosen) {
        let [v] = vs.as_slice() else {
            return Err(Error::Precondition(format!(
                "variable {x:?} has weighted degree {}, expected 1",
                vs.len()
            )));
        };
        out.insert(x.clone(), g.values[*v as usize - 1].clone());
    }
    Ok(Assignment(out))
}

pub fn check_consistency(m: &EgccModel) -> Result<Consistency> {
    check_consistency_with(m, &SolveOptions::default())
}

pub fn check_consistency_with(m: &EgccModel, opts: &SolveOptions) -> Result<Consistency> {
    let g = build_value_graph(m)?;
    let (decision, _) = solve_singleton_ones(&g.instance, opts)?;
    match decision {
        Decision::No => Ok(Consistency::Inconsistent),
        Decision::Yes(phi) => Ok(Consistency::Consistent(factor_to_assignment(&g, &phi)?)),
    }
}
