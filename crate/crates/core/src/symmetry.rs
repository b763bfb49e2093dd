//! Automorphism groups and the invariants obtained by averaging over them.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::complex::{CliqueComplex, Simplex, SimplexId};
use crate::dynamics::{GraphMap, Topology};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default vertex cap for [`AutomorphismGroup::new`].
pub const DEFAULT_GROUP_CAP: usize = 12;

/// Every automorphism of a graph, identity first, in lexicographic order of
/// image lists.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    elements: Vec<GraphMap>,
}

impl AutomorphismGroup {
    pub fn new(g: &Graph) -> Result<Self> {
        Self::with_cap(g, DEFAULT_GROUP_CAP)
    }

    /// Backtracks over vertices in order. A candidate image must be unused,
    /// have the same degree, and agree on adjacency with every vertex
    /// already placed.
    pub fn with_cap(g: &Graph, cap: usize) -> Result<Self> {
        let n = g.vertex_count();
        if n > cap {
            return Err(Error::CapExceeded {
                what: "automorphism enumeration",
                cap,
                got: n,
            });
        }
        let mut elements = Vec::new();
        let mut image = Vec::with_capacity(n);
        let mut used = vec![false; n];
        search(g, &mut image, &mut used, &mut elements);
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[GraphMap] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, t: &GraphMap) -> bool {
        self.elements.binary_search_by(|e| e.image().cmp(t.image())).is_ok()
    }
}

fn search(g: &Graph, image: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<GraphMap>) {
    let v = image.len();
    if v == g.vertex_count() {
        out.push(GraphMap::validate(g, image.clone()).expect("search only builds automorphisms"));
        return;
    }
    for w in 0..g.vertex_count() {
        if used[w] || g.degree(w) != g.degree(v) {
            continue;
        }
        if (0..v).any(|u| g.adjacent(u, v) != g.adjacent(image[u], w)) {
            continue;
        }
        used[w] = true;
        image.push(w);
        search(g, image, used, out);
        image.pop();
        used[w] = false;
    }
}

pub fn automorphism_group(g: &Graph) -> Result<AutomorphismGroup> {
    AutomorphismGroup::new(g)
}

/// What acts on the simplices when computing orbits.
#[derive(Clone, Copy, Debug)]
pub enum Action<'a> {
    Map(&'a GraphMap),
    Group(&'a AutomorphismGroup),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexOrbit {
    /// For a single map, `x, Tx, T^2x, ...` starting at the smallest member;
    /// for a group, sorted.
    pub members: Vec<SimplexId>,
    /// Minimal period under a single map; `None` for group orbits.
    pub period: Option<usize>,
}

impl SimplexOrbit {
    pub fn representative(&self) -> SimplexId {
        self.members[0]
    }

    pub fn dim(&self) -> usize {
        self.members[0].dim
    }
}

fn image_id(c: &CliqueComplex, t: &GraphMap, id: SimplexId) -> SimplexId {
    let (image, _) = t.map_simplex(c.simplex(id).vertices());
    c.index_of(&image).expect("automorphisms permute cliques")
}

/// Partition of all simplices into orbits, ordered by representative.
pub fn simplex_orbits(c: &CliqueComplex, action: Action<'_>) -> Result<Vec<SimplexOrbit>> {
    let mut seen: BTreeSet<SimplexId> = BTreeSet::new();
    let mut orbits = Vec::new();
    for (id, _) in c.iter() {
        if seen.contains(&id) {
            continue;
        }
        let orbit = match action {
            Action::Map(t) => {
                if !t.is_automorphism() {
                    return Err(Error::NotAutomorphism);
                }
                let mut members = vec![id];
                let mut next = image_id(c, t, id);
                while next != id {
                    members.push(next);
                    next = image_id(c, t, next);
                }
                let period = members.len();
                SimplexOrbit {
                    members,
                    period: Some(period),
                }
            }
            Action::Group(group) => {
                let members: BTreeSet<SimplexId> = group.elements().iter().map(|t| image_id(c, t, id)).collect();
                SimplexOrbit {
                    members: members.into_iter().collect(),
                    period: None,
                }
            }
        };
        seen.extend(orbit.members.iter().copied());
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Lefschetz curvature `κ(x) = (1/|A|) Σ_{T ∈ A_x} i_T(x)` for every simplex,
/// where `A_x` is the setwise stabilizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureTable {
    entries: Vec<(Simplex, BigRational)>,
}

impl CurvatureTable {
    pub fn new(c: &CliqueComplex, group: &AutomorphismGroup) -> Self {
        let order = BigInt::from(group.order());
        let entries = c
            .iter()
            .map(|(_, s)| {
                let sum: i64 = group
                    .elements()
                    .iter()
                    .filter_map(|t| {
                        let (image, sign) = t.map_simplex(s.vertices());
                        (image == s.vertices()).then_some(if s.dim() % 2 == 0 { sign } else { -sign })
                    })
                    .map(i64::from)
                    .sum();
                (s.clone(), BigRational::new(sum.into(), order.clone()))
            })
            .collect();
        Self { entries }
    }

    pub fn entries(&self) -> &[(Simplex, BigRational)] {
        &self.entries
    }

    pub fn get(&self, s: &Simplex) -> Option<&BigRational> {
        self.entries.iter().find(|(x, _)| x == s).map(|(_, k)| k)
    }

    pub fn total(&self) -> BigRational {
        self.entries.iter().map(|(_, k)| k).sum()
    }
}

pub fn lefschetz_curvature(g: &Graph) -> Result<CurvatureTable> {
    let group = AutomorphismGroup::new(g)?;
    Ok(CurvatureTable::new(&CliqueComplex::new(g), &group))
}

/// `L(T)` for every group element, in group order.
pub fn lefschetz_spectrum(topo: &Topology, group: &AutomorphismGroup) -> Result<Vec<i64>> {
    group
        .elements()
        .par_iter()
        .map(|t| topo.lefschetz_cohomological(t))
        .collect()
}

/// Multiset of Lefschetz numbers as `value -> count`.
pub fn lefschetz_multiset(spectrum: &[i64]) -> BTreeMap<i64, usize> {
    let mut counts = BTreeMap::new();
    for &l in spectrum {
        *counts.entry(l).or_insert(0) += 1;
    }
    counts
}

fn mean(values: &[i64]) -> BigRational {
    let sum: i64 = values.iter().sum();
    BigRational::new(sum.into(), BigInt::from(values.len().max(1)))
}

/// Mean of `L(T)` over the automorphism group.
pub fn average_lefschetz_with(topo: &Topology, group: &AutomorphismGroup) -> Result<BigRational> {
    Ok(mean(&lefschetz_spectrum(topo, group)?))
}

pub fn average_lefschetz(g: &Graph) -> Result<BigRational> {
    average_lefschetz_with(&Topology::new(g), &AutomorphismGroup::new(g)?)
}

/// Quotient of a graph by its automorphism group: one vertex per vertex
/// orbit, an edge between two distinct classes iff some edge joins them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbigraph {
    pub graph: Graph,
    /// Class id of each original vertex; classes are numbered by smallest member.
    pub projection: Vec<usize>,
}

impl Orbigraph {
    pub fn new(g: &Graph, group: &AutomorphismGroup) -> Self {
        let n = g.vertex_count();
        let mut projection = vec![usize::MAX; n];
        let mut classes = 0;
        for v in 0..n {
            if projection[v] != usize::MAX {
                continue;
            }
            for t in group.elements() {
                projection[t.apply(v)] = classes;
            }
            classes += 1;
        }
        let edges = g
            .edges()
            .map(|(u, v)| (projection[u], projection[v]))
            .filter(|(a, b)| a != b)
            .collect::<Vec<_>>();
        let graph = Graph::new(classes, edges).expect("class ids are in range");
        Self { graph, projection }
    }

    pub fn euler_characteristic(&self) -> i64 {
        CliqueComplex::new(&self.graph).euler_characteristic()
    }
}

pub fn orbigraph(g: &Graph) -> Result<Orbigraph> {
    Ok(Orbigraph::new(g, &AutomorphismGroup::new(g)?))
}

/// One exact comparison with both sides kept for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCheck {
    pub name: &'static str,
    pub left: BigRational,
    pub right: BigRational,
}

impl RationalCheck {
    pub fn passed(&self) -> bool {
        self.left == self.right
    }
}

#[derive(Clone, Debug)]
pub struct AveragingReport {
    pub group_order: usize,
    pub average_lefschetz: BigRational,
    pub curvature_total: BigRational,
    pub orbigraph_euler: i64,
    pub orbit_classes: usize,
    pub burnside_average: BigRational,
    /// Sum of curvature over each group orbit of simplices, by representative.
    pub orbit_curvature_sums: Vec<(Simplex, BigRational)>,
}

impl AveragingReport {
    pub fn checks(&self) -> Vec<RationalCheck> {
        vec![
            RationalCheck {
                name: "curvature_sum_equals_average_lefschetz",
                left: self.curvature_total.clone(),
                right: self.average_lefschetz.clone(),
            },
            RationalCheck {
                name: "average_lefschetz_equals_orbigraph_euler",
                left: self.average_lefschetz.clone(),
                right: BigRational::from_integer(self.orbigraph_euler.into()),
            },
            RationalCheck {
                name: "burnside_orbit_count",
                left: BigRational::from_integer(self.orbit_classes.into()),
                right: self.burnside_average.clone(),
            },
        ]
    }

    pub fn all_passed(&self) -> bool {
        self.average_lefschetz.is_integer() && self.checks().iter().all(RationalCheck::passed)
    }

    /// Orbit classes whose total curvature is not `±1`. These are recorded
    /// as findings; they are not theorem failures.
    pub fn unit_orbit_sum_violations(&self) -> Vec<&(Simplex, BigRational)> {
        self.orbit_curvature_sums
            .iter()
            .filter(|(_, sum)| !(sum.is_one() || (-sum).is_one()))
            .collect()
    }
}

pub fn verify_averaging_theorems_with(topo: &Topology, group: &AutomorphismGroup) -> Result<AveragingReport> {
    let c = topo.complex();
    let curvature = CurvatureTable::new(c, group);
    let orbits = simplex_orbits(c, Action::Group(group))?;
    let fixed_total: usize = group.elements().iter().map(|t| topo.fixed_simplices(t).len()).sum();
    let orbit_curvature_sums = orbits
        .iter()
        .map(|orbit| {
            let sum: BigRational = orbit
                .members
                .iter()
                .map(|&id| curvature.get(c.simplex(id)).cloned().unwrap_or_else(BigRational::zero))
                .sum();
            (c.simplex(orbit.representative()).clone(), sum)
        })
        .collect();
    Ok(AveragingReport {
        group_order: group.order(),
        average_lefschetz: average_lefschetz_with(topo, group)?,
        curvature_total: curvature.total(),
        orbigraph_euler: Orbigraph::new(topo.graph(), group).euler_characteristic(),
        orbit_classes: orbits.len(),
        burnside_average: BigRational::new(fixed_total.into(), group.order().into()),
        orbit_curvature_sums,
    })
}

pub fn verify_averaging_theorems(g: &Graph) -> Result<AveragingReport> {
    verify_averaging_theorems_with(&Topology::new(g), &AutomorphismGroup::new(g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, generate_named};

    fn g(name: &str, k: usize) -> Graph {
        generate_named(name, k).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn k2_plus_k1() -> Graph {
        disjoint_union(&g("complete", 2), &g("complete", 1))
    }

    #[test]
    fn group_orders() {
        assert_eq!(automorphism_group(&g("petersen", 0)).unwrap().order(), 120);
        assert_eq!(automorphism_group(&g("cycle", 4)).unwrap().order(), 8);
        assert_eq!(automorphism_group(&g("complete", 4)).unwrap().order(), 24);
        assert_eq!(automorphism_group(&g("discrete", 0)).unwrap().order(), 1);
        let group = automorphism_group(&g("cycle", 5)).unwrap();
        assert!(group.elements()[0].is_identity());
        assert!(group.elements().windows(2).all(|w| w[0].image() < w[1].image()));
        assert!(matches!(
            AutomorphismGroup::with_cap(&g("complete", 5), 4),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn orbit_examples() {
        let c4 = g("cycle", 4);
        let c = CliqueComplex::new(&c4);
        let rot = GraphMap::validate(&c4, vec![1, 2, 3, 0]).unwrap();
        let orbits = simplex_orbits(&c, Action::Map(&rot)).unwrap();
        let summary: Vec<(usize, Option<usize>)> = orbits.iter().map(|o| (o.dim(), o.period)).collect();
        assert_eq!(summary, [(0, Some(4)), (1, Some(4))]);

        let refl = GraphMap::validate(&c4, vec![0, 3, 2, 1]).unwrap();
        let orbits = simplex_orbits(&c, Action::Map(&refl)).unwrap();
        let summary: Vec<(usize, Option<usize>)> = orbits.iter().map(|o| (o.dim(), o.period)).collect();
        assert_eq!(summary, [(0, Some(1)), (0, Some(2)), (0, Some(1)), (1, Some(2)), (1, Some(2))]);

        let k3 = g("complete", 3);
        let group = automorphism_group(&k3).unwrap();
        let orbits = simplex_orbits(&CliqueComplex::new(&k3), Action::Group(&group)).unwrap();
        assert_eq!(orbits.iter().map(|o| o.members.len()).collect::<Vec<_>>(), [3, 3, 1]);

        let star = g("star", 2);
        let fold = GraphMap::validate(&star, vec![0, 1, 1]).unwrap();
        assert!(simplex_orbits(&CliqueComplex::new(&star), Action::Map(&fold)).is_err());
    }

    #[test]
    fn curvature_examples() {
        for n in 2..=4 {
            let table = lefschetz_curvature(&g("complete", n)).unwrap();
            for (s, k) in table.entries() {
                let expected = if s.dim() == 0 { q(1, n as i64) } else { q(0, 1) };
                assert_eq!(k, &expected, "K_{n} at {s}");
            }
        }
        // vertex stabilizer {id, reflection}: both index +1; edge stabilizer
        // {id, flip}: indices -1 and +1 cancel
        for n in 4..=6 {
            let table = lefschetz_curvature(&g("cycle", n)).unwrap();
            for (s, k) in table.entries() {
                let expected = if s.dim() == 0 { q(1, n as i64) } else { q(0, 1) };
                assert_eq!(k, &expected, "C_{n} at {s}");
            }
        }
        // hub 5 is fixed by all ten elements; rim vertices and spokes keep a
        // reflection in their stabilizer with indices that do not cancel
        let table = lefschetz_curvature(&g("wheel", 5)).unwrap();
        for (s, k) in table.entries() {
            let expected = match s.vertices() {
                [5] => q(1, 1),
                [_] => q(1, 5),
                [_, 5] => q(-1, 5),
                _ => q(0, 1),
            };
            assert_eq!(k, &expected, "W_5 at {s}");
        }
        assert_eq!(table.total(), q(1, 1));
    }

    #[test]
    fn average_examples() {
        assert_eq!(average_lefschetz(&g("petersen", 0)).unwrap(), q(1, 1));
        assert_eq!(average_lefschetz(&k2_plus_k1()).unwrap(), q(2, 1));
    }

    #[test]
    fn orbigraph_examples() {
        let o = orbigraph(&g("cycle", 5)).unwrap();
        assert_eq!((o.graph.vertex_count(), o.euler_characteristic()), (1, 1));
        let o = orbigraph(&k2_plus_k1()).unwrap();
        assert_eq!((o.graph.vertex_count(), o.graph.edge_count(), o.euler_characteristic()), (2, 0, 2));
        assert_eq!(o.projection, vec![0, 0, 1]);
        let o = orbigraph(&g("petersen", 0)).unwrap();
        assert_eq!((o.graph.vertex_count(), o.euler_characteristic()), (1, 1));
    }

    #[test]
    fn triangle_orbit_sum_is_a_finding() {
        let report = verify_averaging_theorems(&g("complete", 3)).unwrap();
        assert!(report.all_passed());
        let violations = report.unit_orbit_sum_violations();
        assert_eq!(violations.len(), 2);
        assert!(violations.iter().all(|(_, sum)| sum.is_zero()));
    }
}
