//! One function per subcommand. Errors are input errors (exit code 1);
//! failed checks are recorded in the report (exit code 2).

use graph_lefschetz::dynamics::{attractor, Topology};
use graph_lefschetz::experiment::{exhaustive_expectation, sampled_expectation, ExpectationReport, Probability};
use graph_lefschetz::graph::connected_components;
use graph_lefschetz::symmetry::{
    lefschetz_multiset, lefschetz_spectrum, verify_averaging_theorems_with, AutomorphismGroup, CurvatureTable,
    Orbigraph,
};
use graph_lefschetz::verify::{map_checks, named_corpus, structural_checks, verify_graph, zeta_checks, Check, VerifyOptions};
use graph_lefschetz::zeta::{graph_zeta, zeta_agreement};
use graph_lefschetz::GraphMap;

use crate::input::LoadedGraph;
use crate::report::{
    AnalysisReport, CheckRecord, CorpusEntry, CurvatureEntry, ExpectationSection, FixedSimplexJson, GraphSummary,
    GroupSection, MapSection, OrbigraphJson, Rational, ZetaJson, ZetaStatus,
};

type Outcome = Result<AnalysisReport, String>;

fn text(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn summary(loaded: &LoadedGraph, topo: &Topology) -> GraphSummary {
    let g = topo.graph();
    GraphSummary {
        source: loaded.label.clone(),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        f_vector: topo.complex().f_vector(),
        euler_characteristic: topo.euler_characteristic(),
        betti: topo.betti().to_vec(),
        star_shaped: topo.is_star_shaped(),
        components: connected_components(g).len(),
    }
}

fn map_section(topo: &Topology, t: &GraphMap, series_order: Option<usize>) -> Result<(MapSection, Vec<Check>), String> {
    let fixed = topo.fixed_simplices(t);
    let (sub, _) = attractor(topo.graph(), t).map_err(text)?;
    let mut checks = map_checks(topo, t).map_err(text)?;
    let zeta = if t.is_automorphism() {
        checks.extend(zeta_checks(topo, t, series_order).map_err(text)?);
        let z = zeta_agreement(topo, t, series_order).map_err(text)?;
        Some(ZetaStatus {
            zeta: ZetaJson::from(&z.product),
            det_equals_product: z.det_matches_product(),
            series_order: z.series_order,
            series_consistent: z.series_ok,
        })
    } else {
        None
    };
    let section = MapSection {
        image: t.image().to_vec(),
        kind: if t.is_automorphism() { "automorphism" } else { "endomorphism" }.into(),
        attractor_vertices: sub.vertex_count(),
        lefschetz_cohomological: topo.lefschetz_cohomological(t).map_err(text)?,
        lefschetz_chain: topo.lefschetz_chain(t),
        fixed_index_sum: fixed.iter().map(|r| i64::from(r.index)).sum(),
        fixed_simplices: fixed
            .iter()
            .map(|r| FixedSimplexJson {
                simplex: r.simplex.vertices().to_vec(),
                dim: r.dim,
                perm_sign: r.perm_sign,
                index: r.index,
            })
            .collect(),
        zeta,
    };
    Ok((section, checks))
}

fn group_section(topo: &Topology, group: &AutomorphismGroup) -> Result<GroupSection, String> {
    let spectrum = lefschetz_spectrum(topo, group).map_err(text)?;
    let total: i64 = spectrum.iter().sum();
    let average = num_rational::BigRational::new(total.into(), (group.order() as i64).into());
    Ok(GroupSection {
        order: group.order(),
        lefschetz_multiset: lefschetz_multiset(&spectrum).into_iter().collect(),
        average_lefschetz: Rational::from(&average),
        orbigraph_euler_characteristic: None,
        orbigraph: None,
        curvature: None,
        curvature_total: None,
        zeta: None,
    })
}

pub fn analyze(loaded: &LoadedGraph, map: Option<&GraphMap>) -> Outcome {
    let topo = Topology::new(&loaded.graph);
    let mut report = AnalysisReport::new("analyze");
    report.graph = Some(summary(loaded, &topo));
    report.push_checks(structural_checks(&topo));
    if let Some(t) = map {
        let (section, checks) = map_section(&topo, t, None)?;
        report.map = Some(section);
        report.push_checks(checks);
    }
    Ok(report)
}

pub fn aut(loaded: &LoadedGraph, curvature: bool, orbigraph: bool) -> Outcome {
    let topo = Topology::new(&loaded.graph);
    let group = AutomorphismGroup::new(&loaded.graph).map_err(text)?;
    let mut report = AnalysisReport::new("aut");
    report.graph = Some(summary(loaded, &topo));
    let mut section = group_section(&topo, &group)?;
    let averaging = verify_averaging_theorems_with(&topo, &group).map_err(text)?;
    section.orbigraph_euler_characteristic = Some(averaging.orbigraph_euler);
    report.push_checks(averaging.checks().into_iter().map(|c| Check::equal(c.name, &c.left, &c.right)));
    report.push_checks([Check::holds(
        "average_lefschetz_is_integer",
        averaging.average_lefschetz.is_integer(),
        &averaging.average_lefschetz,
        "integer",
    )]);
    for (s, sum) in averaging.unit_orbit_sum_violations() {
        report.findings.push(format!("curvature over the orbit of {s} sums to {sum}, not ±1"));
    }
    if curvature {
        let table = CurvatureTable::new(topo.complex(), &group);
        section.curvature = Some(
            table
                .entries()
                .iter()
                .map(|(s, k)| CurvatureEntry {
                    simplex: s.vertices().to_vec(),
                    kappa: Rational::from(k),
                })
                .collect(),
        );
        section.curvature_total = Some(Rational::from(&table.total()));
    }
    if orbigraph {
        let o = Orbigraph::new(&loaded.graph, &group);
        section.orbigraph = Some(OrbigraphJson {
            vertices: o.graph.vertex_count(),
            edges: o.graph.edges().collect(),
            projection: o.projection.clone(),
            euler_characteristic: o.euler_characteristic(),
        });
    }
    report.group = Some(section);
    Ok(report)
}

/// Without `--map` or `--group` the identity map is used.
pub fn zeta(loaded: &LoadedGraph, map: Option<&GraphMap>, group: bool, series_order: Option<usize>) -> Outcome {
    let topo = Topology::new(&loaded.graph);
    let mut report = AnalysisReport::new("zeta");
    report.graph = Some(summary(loaded, &topo));
    let identity = GraphMap::identity(loaded.graph.vertex_count());
    let map = map.or((!group).then_some(&identity));
    if let Some(t) = map {
        if !t.is_automorphism() {
            return Err("the zeta function needs an automorphism; this map is not bijective".into());
        }
        let (section, checks) = map_section(&topo, t, series_order)?;
        report.map = Some(section);
        report.push_checks(checks.into_iter().filter(|c| c.name.contains("zeta")));
    }
    if group {
        let g = AutomorphismGroup::new(&loaded.graph).map_err(text)?;
        let z = graph_zeta(&topo, &g).map_err(text)?;
        report.push_checks([Check::holds(
            "zeta_G factored form consistent",
            z.factored_is_consistent(),
            z.factored().map(|f| f.to_string()).unwrap_or_default(),
            &z,
        )]);
        let mut section = group_section(&topo, &g)?;
        section.zeta = Some(ZetaJson::from(&z));
        report.group = Some(section);
    }
    Ok(report)
}

fn expectation_section(mode: &str, r: &ExpectationReport) -> ExpectationSection {
    ExpectationSection {
        mode: mode.into(),
        n: r.n,
        graphs: r.graphs,
        mean: Rational::from(&r.mean),
        min: Rational::from(&r.min),
        max: Rational::from(&r.max),
        p: None,
        seed: None,
    }
}

pub fn random_exhaustive(n: usize, cap: usize) -> Outcome {
    let r = exhaustive_expectation(n, cap).map_err(text)?;
    let mut report = AnalysisReport::new("random");
    report.expectation = Some(expectation_section("exhaustive", &r));
    Ok(report)
}

pub fn random_sampled(n: usize, samples: usize, p: &str, seed: u64) -> Outcome {
    let p: Probability = p.parse().map_err(text)?;
    let r = sampled_expectation(n, samples, p, seed).map_err(text)?;
    let mut section = expectation_section("sampled", &r);
    section.p = Some(Rational::from(&p.as_rational()));
    section.seed = Some(seed);
    let mut report = AnalysisReport::new("random");
    report.expectation = Some(section);
    Ok(report)
}

pub fn verify_corpus(options: &VerifyOptions) -> Outcome {
    let mut report = AnalysisReport::new("verify-corpus");
    let mut entries = Vec::new();
    for (label, g) in named_corpus() {
        let v = verify_graph(&label, &g, options).map_err(text)?;
        entries.push(CorpusEntry {
            label: v.label.clone(),
            automorphisms: v.automorphisms,
            checks: v.checks.len(),
            failures: v.failures().cloned().map(CheckRecord::from).collect(),
        });
        report.findings.extend(v.findings);
    }
    report.corpus = Some(entries);
    Ok(report)
}
