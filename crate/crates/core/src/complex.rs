//! The clique complex: every complete subgraph, graded by dimension.

use std::collections::HashMap;
use std::fmt;

use crate::graph::Graph;

/// A clique, stored as its strictly increasing vertex list. The ascending
/// order is the reference orientation used by every sign in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Panics unless `vertices` is nonempty and strictly increasing.
    pub fn new(vertices: Vec<usize>) -> Self {
        assert!(!vertices.is_empty(), "a simplex has at least one vertex");
        assert!(vertices.windows(2).all(|w| w[0] < w[1]), "simplex vertices must be strictly increasing");
        Self(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// The facet obtained by deleting the `i`-th vertex.
    pub fn facet(&self, i: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(i);
        Simplex(v)
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Position of a simplex inside a [`CliqueComplex`]: dimension and index
/// within that dimension's sorted list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SimplexId {
    pub dim: usize,
    pub index: usize,
}

#[derive(Clone, Debug)]
pub struct CliqueComplex {
    graph: Graph,
    levels: Vec<Vec<Simplex>>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
}

impl CliqueComplex {
    /// Enumerates all cliques of `g`.
    pub fn new(g: &Graph) -> Self {
        Self::with_max_dim(g, None)
    }

    /// Like [`CliqueComplex::new`], but stops at dimension `max_dim` when given.
    pub fn with_max_dim(g: &Graph, max_dim: Option<usize>) -> Self {
        let mut levels: Vec<Vec<Simplex>> = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        for v in 0..g.vertex_count() {
            current.push(v);
            extend(g, &mut current, &mut levels, max_dim);
            current.pop();
        }
        for level in &mut levels {
            level.sort_unstable();
        }
        let lookup = levels
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.0.clone(), i)).collect())
            .collect();
        Self {
            graph: g.clone(),
            levels,
            lookup,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Largest dimension present; `None` for the empty graph.
    pub fn max_dim(&self) -> Option<usize> {
        self.levels.len().checked_sub(1)
    }

    /// Number of nonempty dimensions.
    pub fn dim_count(&self) -> usize {
        self.levels.len()
    }

    /// Simplices of dimension `k` in lexicographic order (empty past the top).
    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.levels.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn simplex(&self, id: SimplexId) -> &Simplex {
        &self.levels[id.dim][id.index]
    }

    pub fn iter(&self) -> impl Iterator<Item = (SimplexId, &Simplex)> {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(dim, level)| level.iter().enumerate().map(move |(index, s)| (SimplexId { dim, index }, s)))
    }

    /// Index of the clique with the given (sorted) vertex list.
    pub fn index_of(&self, vertices: &[usize]) -> Option<SimplexId> {
        let dim = vertices.len().checked_sub(1)?;
        self.lookup
            .get(dim)?
            .get(vertices)
            .map(|&index| SimplexId { dim, index })
    }

    pub fn total_simplices(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    /// `v_k = |G_k|` for `k = 0..=max_dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.f_vector())
    }
}

fn extend(g: &Graph, current: &mut Vec<usize>, levels: &mut Vec<Vec<Simplex>>, max_dim: Option<usize>) {
    let dim = current.len() - 1;
    if levels.len() <= dim {
        levels.push(Vec::new());
    }
    levels[dim].push(Simplex(current.clone()));
    if max_dim.is_some_and(|m| dim >= m) {
        return;
    }
    let last = *current.last().unwrap();
    for &w in g.neighbors(last) {
        if w > last && current.iter().all(|&u| g.adjacent(u, w)) {
            current.push(w);
            extend(g, current, levels, max_dim);
            current.pop();
        }
    }
}

/// `sum_k (-1)^k counts[k]`.
pub fn alternating_sum(counts: &[usize]) -> i64 {
    counts
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

pub fn build_complex(g: &Graph) -> CliqueComplex {
    CliqueComplex::new(g)
}

pub fn f_vector(c: &CliqueComplex) -> Vec<usize> {
    c.f_vector()
}

pub fn euler_characteristic(c: &CliqueComplex) -> i64 {
    c.euler_characteristic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, generate_named};

    fn named(name: &str, k: usize) -> CliqueComplex {
        CliqueComplex::new(&generate_named(name, k).unwrap())
    }

    #[test]
    fn triangle_has_all_faces() {
        let c = named("complete", 3);
        let all: Vec<String> = c.iter().map(|(_, s)| s.to_string()).collect();
        assert_eq!(all, ["{0}", "{1}", "{2}", "{0,1}", "{0,2}", "{1,2}", "{0,1,2}"]);
    }

    #[test]
    fn f_vectors() {
        assert_eq!(named("petersen", 0).f_vector(), vec![10, 15]);
        assert_eq!(named("octahedron", 0).f_vector(), vec![6, 12, 8]);
        assert_eq!(named("cycle", 5).f_vector(), vec![5, 5]);
        assert_eq!(named("complete", 4).f_vector(), vec![4, 6, 4, 1]);
        assert_eq!(named("wheel", 4).f_vector(), vec![5, 8, 4]);
        assert!(named("discrete", 0).f_vector().is_empty());
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(named("petersen", 0).euler_characteristic(), -5);
        assert_eq!(named("octahedron", 0).euler_characteristic(), 2);
        for n in 1..=6 {
            assert_eq!(named("complete", n).euler_characteristic(), 1);
        }
        assert_eq!(named("discrete", 0).euler_characteristic(), 0);
        let a = generate_named("cycle", 4).unwrap();
        let b = generate_named("wheel", 5).unwrap();
        let u = CliqueComplex::new(&disjoint_union(&a, &b));
        // χ(C_4) + χ(W_5) = 0 + 1
        assert_eq!(u.euler_characteristic(), 1);
    }

    #[test]
    fn dimension_cap() {
        let c = CliqueComplex::with_max_dim(&generate_named("complete", 5).unwrap(), Some(1));
        assert_eq!(c.f_vector(), vec![5, 10]);
    }

    #[test]
    fn lookup_round_trips() {
        let c = named("octahedron", 0);
        for (id, s) in c.iter() {
            assert_eq!(c.index_of(s.vertices()), Some(id));
        }
        assert_eq!(c.index_of(&[0, 3]), None);
        assert_eq!(c.index_of(&[]), None);
    }
}
