//! Graph endomorphisms, their fixed simplices, and Lefschetz numbers.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::IndexedRandom;
use rand::Rng;

use crate::cohomology::{pullbacks, CochainSpaces};
use crate::complex::{CliqueComplex, Simplex};
use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph};
use crate::linalg::{as_integer, RationalMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    Endomorphism,
    Automorphism,
}

/// A vertex map `v -> image[v]` known to send edges to edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphMap {
    image: Vec<usize>,
    kind: MapKind,
}

impl GraphMap {
    /// Checks that `image` is an endomorphism of `g` and classifies it.
    pub fn validate(g: &Graph, image: Vec<usize>) -> Result<Self> {
        let n = g.vertex_count();
        if image.len() != n {
            return Err(Error::MapLength {
                expected: n,
                found: image.len(),
            });
        }
        if let Some((vertex, &image)) = image.iter().enumerate().find(|(_, &w)| w >= n) {
            return Err(Error::MapOutOfRange { vertex, image });
        }
        for (u, v) in g.edges() {
            let (tu, tv) = (image[u], image[v]);
            if tu == tv {
                return Err(Error::EdgeCollapsed { u, v, image: tu });
            }
            if !g.adjacent(tu, tv) {
                return Err(Error::EdgeBroken { u, v, tu, tv });
            }
        }
        Ok(Self::classified(image))
    }

    fn classified(image: Vec<usize>) -> Self {
        let distinct: BTreeSet<usize> = image.iter().copied().collect();
        let kind = if distinct.len() == image.len() {
            MapKind::Automorphism
        } else {
            MapKind::Endomorphism
        };
        Self { image, kind }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
            kind: MapKind::Automorphism,
        }
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn is_automorphism(&self) -> bool {
        self.kind == MapKind::Automorphism
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    /// `self ∘ other`, i.e. `v -> self(other(v))`. Both must act on the same graph.
    pub fn compose(&self, other: &GraphMap) -> GraphMap {
        assert_eq!(self.image.len(), other.image.len(), "maps act on different graphs");
        Self::classified(other.image.iter().map(|&v| self.image[v]).collect())
    }

    /// `T^m`; `T^0` is the identity.
    pub fn power(&self, m: usize) -> GraphMap {
        let mut result = Self::identity(self.image.len());
        for _ in 0..m {
            result = self.compose(&result);
        }
        result
    }

    pub fn inverse(&self) -> Option<GraphMap> {
        if !self.is_automorphism() {
            return None;
        }
        let mut inv = vec![0; self.image.len()];
        for (v, &w) in self.image.iter().enumerate() {
            inv[w] = v;
        }
        Some(Self {
            image: inv,
            kind: MapKind::Automorphism,
        })
    }

    /// Cycle lengths of an automorphism, in order of smallest vertex.
    pub fn cycle_type(&self) -> Option<Vec<usize>> {
        if !self.is_automorphism() {
            return None;
        }
        let mut seen = vec![false; self.image.len()];
        let mut cycles = Vec::new();
        for start in 0..self.image.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                v = self.image[v];
                len += 1;
            }
            cycles.push(len);
        }
        Some(cycles)
    }

    /// Smallest `m >= 1` with `T^m = id`, for automorphisms.
    pub fn order(&self) -> Option<usize> {
        self.cycle_type().map(|c| c.into_iter().fold(1, |acc, len| acc.lcm(&len)))
    }

    /// Sorted image of a clique together with the sign of the permutation
    /// that sorts `(T(x_0), ..., T(x_k))`.
    pub fn map_simplex(&self, vertices: &[usize]) -> (Vec<usize>, i8) {
        let mapped: Vec<usize> = vertices.iter().map(|&v| self.image[v]).collect();
        let sign = permutation_sign(&mapped);
        let mut sorted = mapped;
        sorted.sort_unstable();
        (sorted, sign)
    }
}

/// Sign of the permutation that sorts a list of distinct values.
pub fn permutation_sign(values: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] > values[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn validate_map(g: &Graph, image: Vec<usize>) -> Result<GraphMap> {
    GraphMap::validate(g, image)
}

/// Parses a map file: one line `map <i0> <i1> ...` meaning `T(j) = i_j`.
/// Blank lines and `#` comments are ignored.
pub fn parse_map_file(text: &str) -> Result<Vec<usize>> {
    let mut found: Option<Vec<usize>> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line, message };
        let mut fields = trimmed.split_whitespace();
        if fields.next() != Some("map") {
            return Err(err(format!("expected `map <i0> <i1> ...`, got `{trimmed}`")));
        }
        if found.is_some() {
            return Err(err("duplicate `map` line".into()));
        }
        let image = fields
            .map(|f| f.parse().map_err(|_| err(format!("invalid vertex id `{f}`"))))
            .collect::<Result<Vec<usize>>>()?;
        found = Some(image);
    }
    found.ok_or_else(|| Error::Parse {
        line: 0,
        message: "no `map` line".into(),
    })
}

/// Parses the inline form `1,2,3,0`.
pub fn parse_inline_map(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|f| {
            let f = f.trim();
            f.parse().map_err(|_| Error::Parse {
                line: 0,
                message: format!("invalid vertex id `{f}` in map"),
            })
        })
        .collect()
}

/// A simplex with `T(x) = x` as a set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSimplexRecord {
    pub simplex: Simplex,
    pub dim: usize,
    /// Signature of the vertex permutation `T` induces on the simplex.
    pub perm_sign: i8,
    /// `(-1)^dim * perm_sign`.
    pub index: i8,
}

pub fn fixed_simplices(c: &CliqueComplex, t: &GraphMap) -> Vec<FixedSimplexRecord> {
    c.iter()
        .filter_map(|(_, s)| {
            let (image, perm_sign) = t.map_simplex(s.vertices());
            (image == s.vertices()).then(|| FixedSimplexRecord {
                simplex: s.clone(),
                dim: s.dim(),
                perm_sign,
                index: if s.dim() % 2 == 0 { perm_sign } else { -perm_sign },
            })
        })
        .collect()
}

/// Sum of `i_T(x)` over fixed simplices.
pub fn fixed_index_sum(records: &[FixedSimplexRecord]) -> i64 {
    records.iter().map(|r| i64::from(r.index)).sum()
}

/// `sum_k (-1)^k tr(P_k)` over the cochain-level pullbacks.
pub fn lefschetz_chain(c: &CliqueComplex, t: &GraphMap) -> i64 {
    pullbacks(c, t)
        .iter()
        .enumerate()
        .map(|(k, p)| if k % 2 == 0 { p.trace() } else { -p.trace() })
        .sum()
}

/// `sum_k (-1)^k tr(T_k)` for matrices acting on cohomology.
pub fn alternating_trace(maps: &[RationalMatrix]) -> Result<i64> {
    let total: BigRational = maps
        .iter()
        .enumerate()
        .map(|(k, m)| if k % 2 == 0 { m.trace() } else { -m.trace() })
        .sum();
    as_integer(&total)
        .and_then(|v| i64::try_from(v).ok())
        .ok_or_else(|| Error::Internal(format!("Lefschetz number {total} is not an integer")))
}

/// A graph with its clique complex and cohomology, computed once and reused
/// for every map acting on it.
#[derive(Clone, Debug)]
pub struct Topology {
    complex: CliqueComplex,
    spaces: CochainSpaces,
}

impl Topology {
    pub fn new(g: &Graph) -> Self {
        let complex = CliqueComplex::new(g);
        let spaces = CochainSpaces::new(&complex);
        Self { complex, spaces }
    }

    pub fn graph(&self) -> &Graph {
        self.complex.graph()
    }

    pub fn complex(&self) -> &CliqueComplex {
        &self.complex
    }

    pub fn spaces(&self) -> &CochainSpaces {
        &self.spaces
    }

    pub fn betti(&self) -> &[usize] {
        self.spaces.betti()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.complex.euler_characteristic()
    }

    pub fn is_star_shaped(&self) -> bool {
        self.betti().iter().skip(1).all(Zero::is_zero)
    }

    /// Matrices `T_k` of the maps induced on `H^k`.
    pub fn induced_maps(&self, t: &GraphMap) -> Result<Vec<RationalMatrix>> {
        self.spaces.induced_maps(&pullbacks(&self.complex, t))
    }

    pub fn lefschetz_cohomological(&self, t: &GraphMap) -> Result<i64> {
        alternating_trace(&self.induced_maps(t)?)
    }

    pub fn lefschetz_chain(&self, t: &GraphMap) -> i64 {
        lefschetz_chain(&self.complex, t)
    }

    pub fn fixed_simplices(&self, t: &GraphMap) -> Vec<FixedSimplexRecord> {
        fixed_simplices(&self.complex, t)
    }
}

pub fn lefschetz_cohomological(g: &Graph, t: &GraphMap) -> Result<i64> {
    Topology::new(g).lefschetz_cohomological(t)
}

/// True iff `b_k = 0` for all `k >= 1`.
pub fn is_star_shaped(g: &Graph) -> bool {
    Topology::new(g).is_star_shaped()
}

/// Restriction of `t` to its eventual image `⋂ T^k(V)`, relabeled by
/// ascending vertex id. The restriction is always an automorphism.
pub fn attractor(g: &Graph, t: &GraphMap) -> Result<(Graph, GraphMap)> {
    let mut current: BTreeSet<usize> = (0..g.vertex_count()).collect();
    loop {
        let next: BTreeSet<usize> = current.iter().map(|&v| t.apply(v)).collect();
        if next == current {
            break;
        }
        current = next;
    }
    let vertices: Vec<usize> = current.into_iter().collect();
    let sub = g.induced_subgraph(&vertices);
    let position = |v: usize| vertices.binary_search(&v).expect("attractor is invariant");
    let image = vertices.iter().map(|&v| position(t.apply(v))).collect();
    let restricted = GraphMap::validate(&sub, image)?;
    if !restricted.is_automorphism() {
        return Err(Error::Internal("restriction to the attractor is not bijective".into()));
    }
    Ok((sub, restricted))
}

/// Outcome of checking the discrete Brouwer theorem for one map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrouwerReport {
    /// Graph is connected and star-shaped.
    pub applicable: bool,
    pub fixed_count: usize,
    /// Lowest-dimensional fixed simplex, if any.
    pub witness: Option<Simplex>,
}

impl BrouwerReport {
    /// False only when the theorem applies and no fixed simplex exists.
    pub fn holds(&self) -> bool {
        !self.applicable || self.witness.is_some()
    }
}

pub fn brouwer_check(g: &Graph, t: &GraphMap) -> BrouwerReport {
    brouwer_check_with(&Topology::new(g), t)
}

pub fn brouwer_check_with(topo: &Topology, t: &GraphMap) -> BrouwerReport {
    let connected = connected_components(topo.graph()).len() == 1;
    let fixed = topo.fixed_simplices(t);
    BrouwerReport {
        applicable: connected && topo.is_star_shaped(),
        fixed_count: fixed.len(),
        witness: fixed.into_iter().next().map(|r| r.simplex),
    }
}

/// Draws a random endomorphism by backtracking: vertices are
/// assigned in order, each to a random image compatible with its already
/// assigned neighbors. Always succeeds since the identity is valid.
pub fn random_endomorphism<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> GraphMap {
    let n = g.vertex_count();
    let mut image = vec![usize::MAX; n];
    let found = assign(g, 0, &mut image, rng);
    debug_assert!(found);
    GraphMap::validate(g, image).expect("backtracking only builds endomorphisms")
}

fn assign<R: Rng + ?Sized>(g: &Graph, v: usize, image: &mut [usize], rng: &mut R) -> bool {
    if v == image.len() {
        return true;
    }
    let mut candidates: Vec<usize> = (0..image.len())
        .filter(|&w| g.neighbors(v).iter().all(|&u| u > v || g.adjacent(image[u], w)))
        .collect();
    while !candidates.is_empty() {
        let &w = candidates.choose(rng).unwrap();
        candidates.retain(|&c| c != w);
        image[v] = w;
        if assign(g, v + 1, image, rng) {
            return true;
        }
    }
    image[v] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_named;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g(name: &str, k: usize) -> Graph {
        generate_named(name, k).unwrap()
    }

    #[test]
    fn validation_examples() {
        let c4 = g("cycle", 4);
        assert_eq!(validate_map(&c4, vec![1, 2, 3, 0]).unwrap().kind(), MapKind::Automorphism);
        let p3 = g("path", 3);
        assert!(matches!(
            validate_map(&p3, vec![0, 2, 1]),
            Err(Error::EdgeBroken { u: 0, v: 1, tu: 0, tv: 2 })
        ));
        assert!(matches!(validate_map(&p3, vec![0, 0, 1]), Err(Error::EdgeCollapsed { .. })));
        assert!(matches!(validate_map(&p3, vec![0, 1]), Err(Error::MapLength { .. })));
        assert!(matches!(validate_map(&p3, vec![0, 1, 7]), Err(Error::MapOutOfRange { vertex: 2, image: 7 })));
        // star: center 0, leaves 1 and 2; fold both leaves onto 1
        let star = g("star", 2);
        assert_eq!(validate_map(&star, vec![0, 1, 1]).unwrap().kind(), MapKind::Endomorphism);
    }

    #[test]
    fn map_formats() {
        assert_eq!(parse_map_file("# rotation\nmap 1 2 3 0\n").unwrap(), vec![1, 2, 3, 0]);
        assert_eq!(parse_inline_map("1, 2,3,0").unwrap(), vec![1, 2, 3, 0]);
        assert!(matches!(parse_map_file("\nmap 1 x"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_map_file("map 0\nmap 0").is_err());
        assert!(parse_map_file("").is_err());
        assert!(parse_inline_map("1,,2").is_err());
    }

    #[test]
    fn attractor_of_folded_star() {
        let star = g("star", 2);
        let t = validate_map(&star, vec![0, 1, 1]).unwrap();
        let (sub, r) = attractor(&star, &t).unwrap();
        assert_eq!((sub.vertex_count(), sub.edge_count()), (2, 1));
        assert!(r.is_identity());
        let c4 = g("cycle", 4);
        let rot = validate_map(&c4, vec![1, 2, 3, 0]).unwrap();
        let (sub, r) = attractor(&c4, &rot).unwrap();
        assert_eq!((sub, r), (c4, rot));
    }

    #[test]
    fn fixed_simplex_examples() {
        let c4 = g("cycle", 4);
        let refl = validate_map(&c4, vec![0, 3, 2, 1]).unwrap();
        let recs = fixed_simplices(&CliqueComplex::new(&c4), &refl);
        let found: Vec<(String, i8)> = recs.iter().map(|r| (r.simplex.to_string(), r.index)).collect();
        assert_eq!(found, [("{0}".to_string(), 1), ("{2}".to_string(), 1)]);

        let k2 = g("complete", 2);
        let swap = validate_map(&k2, vec![1, 0]).unwrap();
        let recs = fixed_simplices(&CliqueComplex::new(&k2), &swap);
        assert_eq!(recs.len(), 1);
        assert_eq!((recs[0].perm_sign, recs[0].index), (-1, 1));

        let k7 = g("complete", 7);
        let t = validate_map(&k7, vec![1, 2, 0, 4, 5, 6, 3]).unwrap();
        let recs = fixed_simplices(&CliqueComplex::new(&k7), &t);
        let found: Vec<(String, i8)> = recs.iter().map(|r| (r.simplex.to_string(), r.index)).collect();
        assert_eq!(
            found,
            [
                ("{0,1,2}".to_string(), 1),
                ("{3,4,5,6}".to_string(), 1),
                ("{0,1,2,3,4,5,6}".to_string(), -1)
            ]
        );
        assert_eq!(fixed_index_sum(&recs), 1);
    }

    #[test]
    fn lefschetz_examples() {
        let p = g("petersen", 0);
        assert_eq!(lefschetz_cohomological(&p, &GraphMap::identity(10)).unwrap(), -5);
        assert_eq!(lefschetz_chain(&CliqueComplex::new(&p), &GraphMap::identity(10)), -5);
        let c4 = g("cycle", 4);
        assert_eq!(lefschetz_cohomological(&c4, &validate_map(&c4, vec![1, 2, 3, 0]).unwrap()).unwrap(), 0);
        let c5 = g("cycle", 5);
        assert_eq!(lefschetz_cohomological(&c5, &validate_map(&c5, vec![0, 4, 3, 2, 1]).unwrap()).unwrap(), 2);
        let oct = g("octahedron", 0);
        // reflection swapping the antipodal pair 0 <-> 3
        let refl = validate_map(&oct, vec![3, 1, 2, 0, 4, 5]).unwrap();
        assert_eq!(lefschetz_cohomological(&oct, &refl).unwrap(), 0);
        let tt = g("two_triangles_shared_edge", 0);
        let swap = validate_map(&tt, vec![0, 1, 3, 2]).unwrap();
        assert_eq!(lefschetz_chain(&CliqueComplex::new(&tt), &swap), 1);
    }

    #[test]
    fn star_shaped_examples() {
        assert!(is_star_shaped(&g("path", 6)));
        assert!(is_star_shaped(&g("star", 4)));
        assert!(!is_star_shaped(&g("cycle", 5)));
        assert!(is_star_shaped(&g("wheel", 5)));
    }

    #[test]
    fn brouwer_examples() {
        let w5 = g("wheel", 5);
        let rot = validate_map(&w5, vec![1, 2, 3, 4, 0, 5]).unwrap();
        let r = brouwer_check(&w5, &rot);
        assert!(r.applicable && r.holds());
        assert_eq!(r.witness.unwrap().vertices(), &[5]);

        let k3 = g("complete", 3);
        let r = brouwer_check(&k3, &validate_map(&k3, vec![1, 2, 0]).unwrap());
        assert_eq!(r.witness.unwrap().vertices(), &[0, 1, 2]);

        let c4 = g("cycle", 4);
        let r = brouwer_check(&c4, &validate_map(&c4, vec![1, 2, 3, 0]).unwrap());
        assert!(!r.applicable && r.holds());
        assert_eq!(r.fixed_count, 0);
    }

    #[test]
    fn map_algebra() {
        let c5 = g("cycle", 5);
        let rot = validate_map(&c5, vec![1, 2, 3, 4, 0]).unwrap();
        assert_eq!(rot.order(), Some(5));
        assert!(rot.power(5).is_identity());
        assert!(rot.compose(&rot.inverse().unwrap()).is_identity());
        assert_eq!(permutation_sign(&[1, 0]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
    }

    #[test]
    fn random_endomorphisms_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for name in ["petersen", "octahedron"] {
            let graph = g(name, 0);
            for _ in 0..20 {
                let t = random_endomorphism(&graph, &mut rng);
                assert!(GraphMap::validate(&graph, t.image().to_vec()).is_ok());
            }
        }
    }
}
