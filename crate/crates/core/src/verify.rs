//! Invariant checks over graphs and maps, shared by the CLI and test suites.

use std::fmt::Display;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cohomology::pullbacks;
use crate::dynamics::{alternating_trace, attractor, brouwer_check_with, fixed_index_sum, GraphMap, Topology};
use crate::error::Result;
use crate::graph::{connected_components, generate_named, Graph};
use crate::linalg::RationalMatrix;
use crate::symmetry::{verify_averaging_theorems_with, AutomorphismGroup};
use crate::zeta::zeta_agreement;

/// One comparison, with both sides rendered for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub left: String,
    pub right: String,
}

impl Check {
    pub fn equal<T: PartialEq + Display>(name: impl Into<String>, left: &T, right: &T) -> Self {
        Self {
            name: name.into(),
            passed: left == right,
            left: left.to_string(),
            right: right.to_string(),
        }
    }

    pub fn holds(name: impl Into<String>, passed: bool, left: impl Display, right: impl Display) -> Self {
        Self {
            name: name.into(),
            passed,
            left: left.to_string(),
            right: right.to_string(),
        }
    }
}

/// Graph-level structural checks: `d∘d = 0`, Euler–Poincaré, `b_0` equals
/// the component count, and the cohomology representatives are independent
/// cocycles.
pub fn structural_checks(topo: &Topology) -> Vec<Check> {
    let spaces = topo.spaces();
    let mut checks = Vec::new();
    for k in 0..spaces.dim_count().saturating_sub(1) {
        let dd = spaces.coboundary(k + 1) * spaces.coboundary(k);
        checks.push(Check::holds(format!("d{}*d{} = 0", k + 1, k), dd.is_zero(), "d*d", "0"));
    }
    checks.push(Check::equal(
        "euler_poincare",
        &topo.euler_characteristic(),
        &spaces.cohomological_euler_characteristic(),
    ));
    let b0 = spaces.betti().first().copied().unwrap_or(0);
    checks.push(Check::equal("b0_equals_components", &b0, &connected_components(topo.graph()).len()));
    for k in 0..spaces.dim_count() {
        let h = spaces.basis(k);
        let closed = (spaces.coboundary(k) * h).is_zero();
        let combined = h.hcat(spaces.image_basis(k));
        checks.push(Check::holds(format!("H{k} representatives are cocycles"), closed, "d*h", "0"));
        checks.push(Check::equal(format!("H{k} basis independent mod exact"), &combined.rank(), &combined.cols()));
    }
    checks
}

/// Lefschetz formula and chain-level checks for one map, plus the attractor
/// cross-check and, for automorphisms, the signed-permutation shape of the
/// pullbacks and power compatibility of the induced maps.
pub fn map_checks(topo: &Topology, t: &GraphMap) -> Result<Vec<Check>> {
    let label = format!("{:?}", t.image());
    let mut checks = Vec::new();
    let c = topo.complex();
    let spaces = topo.spaces();
    let pulls = pullbacks(c, t);
    for k in 0..spaces.dim_count().saturating_sub(1) {
        let d = spaces.coboundary(k);
        let lhs = &pulls[k + 1].to_matrix() * d;
        let rhs = d * &pulls[k].to_matrix();
        checks.push(Check::holds(format!("{label} chain map P{}*d{k} = d{k}*P{k}", k + 1), lhs == rhs, "P*d", "d*P"));
    }
    if t.is_automorphism() {
        let signed_perm = pulls.iter().all(|p| is_signed_permutation(&p.to_matrix()));
        checks.push(Check::holds(format!("{label} pullbacks are signed permutations"), signed_perm, "P", "signed permutation"));
    }
    let maps = topo.induced_maps(t)?;
    let cohomological = alternating_trace(&maps)?;
    let fixed = fixed_index_sum(&topo.fixed_simplices(t));
    let chain = topo.lefschetz_chain(t);
    checks.push(Check::equal(format!("{label} L cohomological = fixed index sum"), &cohomological, &fixed));
    checks.push(Check::equal(format!("{label} fixed index sum = L chain"), &fixed, &chain));

    let squared: Vec<RationalMatrix> = maps.iter().map(|m| m.pow(2)).collect();
    let power = alternating_trace(&squared)?;
    checks.push(Check::equal(
        format!("{label} L(T^2) = alternating trace of T_k^2"),
        &topo.lefschetz_cohomological(&t.power(2))?,
        &power,
    ));

    if !t.is_automorphism() {
        let (sub, restricted) = attractor(topo.graph(), t)?;
        let on_attractor = Topology::new(&sub).lefschetz_cohomological(&restricted)?;
        checks.push(Check::equal(format!("{label} L(T) = L(T on attractor)"), &cohomological, &on_attractor));
    }
    let brouwer = brouwer_check_with(topo, t);
    checks.push(Check::holds(
        format!("{label} Brouwer"),
        brouwer.holds(),
        format!("applicable={}", brouwer.applicable),
        format!("fixed={}", brouwer.fixed_count),
    ));
    Ok(checks)
}

fn is_signed_permutation(m: &RationalMatrix) -> bool {
    let unit_count = |values: Vec<&BigRational>| {
        let nonzero: Vec<_> = values.into_iter().filter(|v| !v.is_zero()).collect();
        nonzero.len() == 1 && nonzero[0].abs().is_one()
    };
    (0..m.rows()).all(|i| unit_count((0..m.cols()).map(|j| &m[(i, j)]).collect()))
        && (0..m.cols()).all(|j| unit_count((0..m.rows()).map(|i| &m[(i, j)]).collect()))
}

/// Three-way zeta agreement for one automorphism; the series is checked to
/// `series_order` terms, by default twice the order of `t`.
pub fn zeta_checks(topo: &Topology, t: &GraphMap, series_order: Option<usize>) -> Result<Vec<Check>> {
    let label = format!("{:?}", t.image());
    let z = zeta_agreement(topo, t, series_order)?;
    Ok(vec![
        Check::equal(format!("{label} zeta det = zeta product"), &z.det, &z.product),
        Check::holds(
            format!("{label} zeta series to order {}", z.series_order),
            z.series_ok,
            "log-derivative coefficients",
            "L(T^n)",
        ),
        Check::holds(
            format!("{label} zeta factored form consistent"),
            z.product.factored_is_consistent(),
            &z.product,
            "expanded",
        ),
    ])
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub skip_zeta: bool,
    pub skip_averaging: bool,
}

#[derive(Clone, Debug)]
pub struct GraphVerification {
    pub label: String,
    pub automorphisms: usize,
    pub checks: Vec<Check>,
    /// Observations that contradict a remark but not a theorem (orbit classes
    /// whose curvature does not sum to ±1).
    pub findings: Vec<String>,
}

impl GraphVerification {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// Runs every invariant on `g` and all of its automorphisms.
pub fn verify_graph(label: &str, g: &Graph, options: &VerifyOptions) -> Result<GraphVerification> {
    let topo = Topology::new(g);
    let group = AutomorphismGroup::new(g)?;
    let mut checks = structural_checks(&topo);
    for t in group.elements() {
        checks.extend(map_checks(&topo, t)?);
        if !options.skip_zeta {
            checks.extend(zeta_checks(&topo, t, None)?);
        }
    }
    let mut findings = Vec::new();
    if !options.skip_averaging {
        let report = verify_averaging_theorems_with(&topo, &group)?;
        for rc in report.checks() {
            checks.push(Check::equal(rc.name, &rc.left, &rc.right));
        }
        checks.push(Check::holds(
            "average_lefschetz_is_integer",
            report.average_lefschetz.is_integer(),
            &report.average_lefschetz,
            "integer",
        ));
        for (s, sum) in report.unit_orbit_sum_violations() {
            findings.push(format!("{label}: curvature over the orbit of {s} sums to {sum}"));
        }
    }
    Ok(GraphVerification {
        label: label.to_string(),
        automorphisms: group.order(),
        checks,
        findings,
    })
}

/// The named test corpus: `K_1..K_6`, `C_3..C_8`, paths, stars, wheels
/// `W_4..W_6`, octahedron, Petersen, and two triangles sharing an edge.
pub fn named_corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    let mut push = |name: &str, k: usize, label: String| {
        out.push((label, generate_named(name, k).expect("corpus entries are valid")));
    };
    for k in 1..=6 {
        push("complete", k, format!("K_{k}"));
    }
    for k in 3..=8 {
        push("cycle", k, format!("C_{k}"));
    }
    for k in 1..=6 {
        push("path", k, format!("P_{k}"));
    }
    for k in 1..=5 {
        push("star", k, format!("S_{k}"));
    }
    for k in 4..=6 {
        push("wheel", k, format!("W_{k}"));
    }
    push("octahedron", 0, "octahedron".into());
    push("petersen", 0, "petersen".into());
    push("two_triangles_shared_edge", 0, "two_triangles_shared_edge".into());
    out
}
