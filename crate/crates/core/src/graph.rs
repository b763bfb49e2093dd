//! Finite simple graphs on dense vertex ids `0..n`.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest vertex count [`enumerate_all_graphs`] accepts (2^21 graphs).
pub const MAX_ENUMERATION_VERTICES: usize = 7;

/// Undirected simple graph. Immutable once built.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<bool>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, normalizing each pair to `(min, max)` and collapsing
    /// duplicates. Loops and out-of-range ids are rejected.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut edges = BTreeSet::new();
        for (u, v) in pairs {
            if u >= n || v >= n {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("edge ({u},{v}) uses a vertex outside 0..{n}"),
                });
            }
            if u == v {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("loop at vertex {u}"),
                });
            }
            edges.insert((u.min(v), u.max(v)));
        }
        Ok(Self::from_normalized(n, edges))
    }

    fn from_normalized(n: usize, edges: BTreeSet<(usize, usize)>) -> Self {
        let mut adjacency = vec![false; n * n];
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u * n + v] = true;
            adjacency[v * n + u] = true;
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Self {
            n,
            edges,
            adjacency,
            neighbors,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_normalized(n, BTreeSet::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adjacency[u * self.n + v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// Subgraph induced on `vertices`, relabeled by position in the slice.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Self {
        let mut edges = BTreeSet::new();
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    edges.insert((i, j));
                }
            }
        }
        Self::from_normalized(vertices.len(), edges)
    }

    /// Serializes in the edge-list format accepted by [`parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("vertices {}\n", self.n);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_edge_list(s)
    }
}

/// Parses the edge-list text format:
///
/// ```text
/// # comment
/// vertices 4
/// 0 1
/// 1 2
/// ```
///
/// Exactly one `vertices <n>` header; edge lines may appear in any order and
/// duplicates collapse. Line numbers in errors are 1-based.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut pending: Vec<(usize, usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let err = |message: String| Error::Parse { line, message };
        if fields[0] == "vertices" {
            if n.is_some() {
                return Err(err("duplicate `vertices` header".into()));
            }
            if fields.len() != 2 {
                return Err(err("expected `vertices <n>`".into()));
            }
            let count = fields[1]
                .parse()
                .map_err(|_| err(format!("invalid vertex count `{}`", fields[1])))?;
            n = Some(count);
            continue;
        }
        if fields.len() != 2 {
            return Err(err(format!("expected `<u> <v>`, got `{trimmed}`")));
        }
        let parse_id = |s: &str| s.parse::<usize>().map_err(|_| err(format!("invalid vertex id `{s}`")));
        pending.push((line, parse_id(fields[0])?, parse_id(fields[1])?));
    }
    let n = n.ok_or(Error::MissingHeader)?;
    let mut edges = BTreeSet::new();
    for (line, u, v) in pending {
        if u >= n || v >= n {
            return Err(Error::Parse {
                line,
                message: format!("vertex id {} is not below {n}", u.max(v)),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line,
                message: format!("loop edge ({u},{u}) is not allowed"),
            });
        }
        edges.insert((u.min(v), u.max(v)));
    }
    Ok(Graph::from_normalized(n, edges))
}

/// Graph families available through [`generate_named`].
pub const FAMILIES: &[&str] = &[
    "complete",
    "cycle",
    "path",
    "discrete",
    "star",
    "wheel",
    "octahedron",
    "petersen",
    "two_triangles_shared_edge",
];

/// Standard named graphs. Fixed graphs ignore `k`.
///
/// `wheel(k)` is the cycle on `0..k` plus hub `k`; `star(k)` has center `0`
/// and leaves `1..=k`; `two_triangles_shared_edge` has shared edge `01` and
/// apexes `2`, `3`.
pub fn generate_named(name: &str, k: usize) -> Result<Graph> {
    let need = |min: usize| {
        if k < min {
            Err(Error::SizeTooSmall {
                family: name.to_string(),
                min,
                got: k,
            })
        } else {
            Ok(())
        }
    };
    let cycle_edges = |len: usize| (0..len).map(move |i| (i, (i + 1) % len));
    let g = match name {
        "complete" => Graph::new(k, (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))))?,
        "cycle" => {
            need(3)?;
            Graph::new(k, cycle_edges(k))?
        }
        "path" => {
            need(1)?;
            Graph::new(k, (1..k).map(|i| (i - 1, i)))?
        }
        "discrete" => Graph::empty(k),
        "star" => {
            need(1)?;
            Graph::new(k + 1, (1..=k).map(|leaf| (0, leaf)))?
        }
        "wheel" => {
            need(3)?;
            Graph::new(k + 1, cycle_edges(k).chain((0..k).map(|i| (i, k))))?
        }
        "octahedron" => Graph::new(6, (0..6).flat_map(|u| (u + 1..6).filter(move |&v| v != u + 3).map(move |v| (u, v))))?,
        "petersen" => Graph::new(
            10,
            (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)]),
        )?,
        "two_triangles_shared_edge" => Graph::new(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])?,
        other => return Err(Error::UnknownFamily(other.to_string())),
    };
    Ok(g)
}

/// Parses `name` or `name:k` and generates the graph. A missing size is 0,
/// which is fine for fixed graphs.
pub fn generate_from_spec(spec: &str) -> Result<Graph> {
    match spec.split_once(':') {
        Some((name, k)) => {
            let k = k.parse().map_err(|_| Error::Parse {
                line: 0,
                message: format!("invalid size `{k}` in `{spec}`"),
            })?;
            generate_named(name, k)
        }
        None => generate_named(spec, 0),
    }
}

/// Disjoint union; `g2`'s vertices are shifted by `g1.vertex_count()`.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
    let shift = g1.vertex_count();
    let edges = g1.edges().chain(g2.edges().map(|(u, v)| (u + shift, v + shift))).collect();
    Graph::from_normalized(shift + g2.vertex_count(), edges)
}

/// Connected components, each sorted, ordered by smallest member.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.vertex_count()];
    let mut components = Vec::new();
    for start in 0..g.vertex_count() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut component = Vec::new();
        while let Some(v) = stack.pop() {
            component.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        component.sort_unstable();
        components.push(component);
    }
    components
}

/// Every labeled graph on `n` vertices, as the edge subsets of `K_n` in
/// ascending bitmask order. Bit `i` selects the `i`-th pair of the
/// lexicographically sorted pair list.
pub fn enumerate_all_graphs(n: usize) -> Result<AllGraphs> {
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::CapExceeded {
            what: "exhaustive enumeration",
            cap: MAX_ENUMERATION_VERTICES,
            got: n,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = 1u64 << pairs.len();
    Ok(AllGraphs {
        n,
        pairs,
        next: 0,
        total,
    })
}

/// Iterator returned by [`enumerate_all_graphs`].
#[derive(Clone, Debug)]
pub struct AllGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    total: u64,
}

impl AllGraphs {
    pub fn total(&self) -> u64 {
        self.total
    }

    /// The graph at position `mask` of the enumeration.
    pub fn graph_at(&self, mask: u64) -> Graph {
        let edges = self
            .pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        Graph::from_normalized(self.n, edges)
    }
}

impl Iterator for AllGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next >= self.total {
            return None;
        }
        let g = self.graph_at(self.next);
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for AllGraphs {}
