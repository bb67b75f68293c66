//! Enumeration of maximal spanning forests by deletion/contraction.
//!
//! Edges are decided in the given order. An edge whose ends are already
//! joined by chosen edges is a loop after contraction and is deleted. Any
//! other edge is contracted (taken), or deleted if its ends stay connected
//! through the chosen and undecided edges. Every leaf of this search is a
//! distinct maximal spanning forest and every branch reaches a leaf.

use petgraph::unionfind::UnionFind;

pub struct SpanningForests {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
    stack: Vec<(usize, Vec<usize>)>,
}

impl SpanningForests {
    /// `edges` are endpoint pairs over `0..num_vertices`; each yielded forest
    /// is a list of ascending indices into `edges`.
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Self {
        SpanningForests {
            num_vertices,
            edges,
            stack: vec![(0, Vec::new())],
        }
    }

    fn chosen_components(&self, chosen: &[usize]) -> UnionFind<usize> {
        let mut uf = UnionFind::new(self.num_vertices);
        for &i in chosen {
            let (a, b) = self.edges[i];
            uf.union(a, b);
        }
        uf
    }
}

impl Iterator for SpanningForests {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        while let Some((i, chosen)) = self.stack.pop() {
            if i == self.edges.len() {
                return Some(chosen);
            }
            let (a, b) = self.edges[i];
            let mut uf = self.chosen_components(&chosen);
            if uf.equiv(a, b) {
                self.stack.push((i + 1, chosen));
                continue;
            }
            for &(x, y) in &self.edges[i + 1..] {
                uf.union(x, y);
            }
            if uf.equiv(a, b) {
                self.stack.push((i + 1, chosen.clone()));
            }
            let mut taken = chosen;
            taken.push(i);
            self.stack.push((i + 1, taken));
        }
        None
    }
}

/// Maximal spanning forests of the graph of an instance, over its edge indices.
pub fn spanning_forests_of(inst: &crate::instance::Instance) -> SpanningForests {
    let edges = inst.edges().iter().map(|e| inst.endpoint_slots(e)).collect();
    SpanningForests::new(inst.num_vertices(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_yields_itself() {
        let f: Vec<_> = SpanningForests::new(4, vec![(0, 1), (1, 2), (1, 3)]).collect();
        assert_eq!(f, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn four_cycle_has_four() {
        let f: Vec<_> = SpanningForests::new(4, vec![(0, 2), (0, 3), (1, 2), (1, 3)]).collect();
        assert_eq!(f.len(), 4);
        assert!(f.iter().all(|t| t.len() == 3));
    }

    #[test]
    fn no_edges_one_empty_forest() {
        let f: Vec<_> = SpanningForests::new(3, vec![]).collect();
        assert_eq!(f, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn two_components() {
        // triangle-free: a 4-cycle plus a disjoint edge
        let f: Vec<_> = SpanningForests::new(6, vec![(0, 2), (0, 3), (1, 2), (1, 3), (4, 5)]).collect();
        assert_eq!(f.len(), 4);
        assert!(f.iter().all(|t| t.contains(&4)));
    }
}
