//! Serializable reports. Every number is exact: integers are JSON numbers of
//! any size, rationals are `{"num": .., "den": ..}`, polynomials are
//! ascending coefficient lists.

use std::fmt::Write as _;

use graph_lefschetz::linalg::IntPolynomial;
use graph_lefschetz::verify::Check;
use graph_lefschetz::zeta::{Factorization, RationalFunctionZ};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An integer of any size, written as a bare JSON number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n: serde_json::Number = self.0.to_string().parse().map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        n.to_string().parse().map(JsonInt).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rational {
    pub num: JsonInt,
    pub den: JsonInt,
}

impl From<&BigRational> for Rational {
    fn from(q: &BigRational) -> Self {
        Self {
            num: JsonInt(q.numer().clone()),
            den: JsonInt(q.denom().clone()),
        }
    }
}

impl Rational {
    pub fn to_big(&self) -> BigRational {
        BigRational::new(self.num.0.clone(), self.den.0.clone())
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_big())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaJson {
    /// `[p, e_minus, e_plus]`: `(1-z^p)^e_minus (1+z^p)^e_plus`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factored: Option<Vec<(usize, i64, i64)>>,
    pub numerator: Vec<JsonInt>,
    pub denominator: Vec<JsonInt>,
}

impl From<&RationalFunctionZ> for ZetaJson {
    fn from(z: &RationalFunctionZ) -> Self {
        let coeffs = |p: &IntPolynomial| p.coeffs().iter().cloned().map(JsonInt).collect();
        Self {
            factored: z.factored().map(Factorization::triples),
            numerator: coeffs(z.numerator()),
            denominator: coeffs(z.denominator()),
        }
    }
}

impl ZetaJson {
    pub fn render(&self) -> String {
        let poly = |c: &[JsonInt]| IntPolynomial::new(c.iter().map(|x| x.0.clone()).collect());
        let quotient = format!("({}) / ({})", poly(&self.numerator), poly(&self.denominator));
        match &self.factored {
            Some(f) => format!("{} = {quotient}", Factorization::from_triples(f)),
            None => quotient,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub left: String,
    pub right: String,
}

impl From<Check> for CheckRecord {
    fn from(c: Check) -> Self {
        Self {
            name: c.name,
            passed: c.passed,
            left: c.left,
            right: c.right,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub source: String,
    pub vertices: usize,
    pub edges: usize,
    pub f_vector: Vec<usize>,
    pub euler_characteristic: i64,
    pub betti: Vec<usize>,
    pub star_shaped: bool,
    pub components: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedSimplexJson {
    pub simplex: Vec<usize>,
    pub dim: usize,
    pub perm_sign: i8,
    pub index: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaStatus {
    pub zeta: ZetaJson,
    pub det_equals_product: bool,
    pub series_order: usize,
    pub series_consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSection {
    pub image: Vec<usize>,
    /// `automorphism` or `endomorphism`.
    pub kind: String,
    pub attractor_vertices: usize,
    pub lefschetz_cohomological: i64,
    pub lefschetz_chain: i64,
    pub fixed_index_sum: i64,
    pub fixed_simplices: Vec<FixedSimplexJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<ZetaStatus>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbigraphJson {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub projection: Vec<usize>,
    pub euler_characteristic: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvatureEntry {
    pub simplex: Vec<usize>,
    pub kappa: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSection {
    pub order: usize,
    /// `[L(T), count]`, ascending in `L(T)`.
    pub lefschetz_multiset: Vec<(i64, usize)>,
    pub average_lefschetz: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbigraph_euler_characteristic: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbigraph: Option<OrbigraphJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curvature: Option<Vec<CurvatureEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curvature_total: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<ZetaJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectationSection {
    /// `exhaustive` or `sampled`.
    pub mode: String,
    pub n: usize,
    pub graphs: u64,
    pub mean: Rational,
    pub min: Rational,
    pub max: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub label: String,
    pub automorphisms: usize,
    pub checks: usize,
    /// Only the failed checks.
    pub failures: Vec<CheckRecord>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expectation: Option<ExpectationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corpus: Option<Vec<CorpusEntry>>,
    pub checks: Vec<CheckRecord>,
    /// Observations that contradict a remark rather than a theorem.
    pub findings: Vec<String>,
}

impl AnalysisReport {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            ..Self::default()
        }
    }

    pub fn push_checks(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks.into_iter().map(CheckRecord::from));
    }

    /// True when no check failed, including the corpus entries.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
            && self.corpus.iter().flatten().all(|e| e.failures.is_empty())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(g) = &self.graph {
            let _ = writeln!(out, "graph: {}", g.source);
            let _ = writeln!(out, "  vertices {}  edges {}  components {}", g.vertices, g.edges, g.components);
            let _ = writeln!(out, "  f-vector {:?}", g.f_vector);
            let _ = writeln!(out, "  euler characteristic {}", g.euler_characteristic);
            let _ = writeln!(out, "  betti {:?}", g.betti);
            let _ = writeln!(out, "  star-shaped {}", g.star_shaped);
        }
        if let Some(m) = &self.map {
            let _ = writeln!(out, "map {:?} ({})", m.image, m.kind);
            let _ = writeln!(out, "  attractor vertices {}", m.attractor_vertices);
            let _ = writeln!(out, "  L(T) cohomological {}", m.lefschetz_cohomological);
            let _ = writeln!(out, "  L(T) fixed-simplex index sum {}", m.fixed_index_sum);
            let _ = writeln!(out, "  L(T) chain trace {}", m.lefschetz_chain);
            let _ = writeln!(out, "  fixed simplices {}", m.fixed_simplices.len());
            for f in &m.fixed_simplices {
                let _ = writeln!(out, "    {:?} dim {} index {:+}", f.simplex, f.dim, f.index);
            }
            if let Some(z) = &m.zeta {
                let _ = writeln!(out, "  zeta {}", z.zeta.render());
                let _ = writeln!(
                    out,
                    "  zeta det = product {}, series to order {} {}",
                    z.det_equals_product, z.series_order, z.series_consistent
                );
            }
        }
        if let Some(g) = &self.group {
            let _ = writeln!(out, "automorphisms {}", g.order);
            let multiset: Vec<String> = g.lefschetz_multiset.iter().map(|(l, c)| format!("{l}:{c}")).collect();
            let _ = writeln!(out, "  lefschetz multiset {{{}}}", multiset.join(", "));
            let _ = writeln!(out, "  average lefschetz L(G) {}", g.average_lefschetz);
            if let Some(chi) = g.orbigraph_euler_characteristic {
                let _ = writeln!(out, "  orbigraph euler characteristic {chi}");
            }
            if let Some(o) = &g.orbigraph {
                let _ = writeln!(
                    out,
                    "  orbigraph vertices {} edges {:?} euler characteristic {}",
                    o.vertices, o.edges, o.euler_characteristic
                );
            }
            if let Some(c) = &g.curvature {
                let _ = writeln!(out, "  curvature");
                for e in c {
                    let _ = writeln!(out, "    {:?} {}", e.simplex, e.kappa);
                }
            }
            if let Some(t) = &g.curvature_total {
                let _ = writeln!(out, "  curvature total {t}");
            }
            if let Some(z) = &g.zeta {
                let _ = writeln!(out, "  zeta_G {}", z.render());
            }
        }
        if let Some(e) = &self.expectation {
            let _ = writeln!(out, "E_{}[L] = {} ({} graphs, {})", e.n, e.mean, e.graphs, e.mode);
            let _ = writeln!(out, "  min {}  max {}", e.min, e.max);
            if let (Some(p), Some(seed)) = (&e.p, e.seed) {
                let _ = writeln!(out, "  p {p}  seed {seed}");
            }
        }
        if let Some(entries) = &self.corpus {
            for e in entries {
                let verdict = if e.failures.is_empty() { "ok" } else { "FAILED" };
                let _ = writeln!(out, "{:<28} |Aut| {:>4}  {:>6} checks  {verdict}", e.label, e.automorphisms, e.checks);
                for f in &e.failures {
                    let _ = writeln!(out, "    FAIL {}: {} vs {}", f.name, f.left, f.right);
                }
            }
        }
        if !self.checks.is_empty() {
            let failed: Vec<&CheckRecord> = self.checks.iter().filter(|c| !c.passed).collect();
            let _ = writeln!(out, "checks {} passed, {} failed", self.checks.len() - failed.len(), failed.len());
            for c in failed {
                let _ = writeln!(out, "  FAIL {}: {} vs {}", c.name, c.left, c.right);
            }
        }
        for f in &self.findings {
            let _ = writeln!(out, "finding: {f}");
        }
        out
    }
}
