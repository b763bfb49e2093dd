use std::path::PathBuf;
use std::process::{Command, Output};

use graph_lefschetz::linalg::IntPolynomial;
use graph_lefschetz_cli::report::{AnalysisReport, CheckRecord, JsonInt, Rational};
use num_bigint::BigInt;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lefschetz")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (AnalysisReport, String) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    (serde_json::from_str(&text).expect("valid report"), text)
}

fn ints(values: &[i64]) -> Vec<JsonInt> {
    values.iter().map(|&v| JsonInt(BigInt::from(v))).collect()
}

fn rational(num: i64, den: i64) -> Rational {
    Rational {
        num: JsonInt(num.into()),
        den: JsonInt(den.into()),
    }
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lefschetz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn analyze_petersen() {
    let (r, _) = json(&["analyze", "petersen.g"]);
    let g = r.graph.unwrap();
    assert_eq!((g.euler_characteristic, g.betti), (-5, vec![1, 6]));
    assert!(r.checks.iter().all(|c| c.passed));
}

#[test]
fn analyze_square_rotation_has_no_fixed_simplices() {
    let (r, _) = json(&["analyze", "c4.g", "--map", "1,2,3,0"]);
    let m = r.map.unwrap();
    assert_eq!((m.lefschetz_cohomological, m.fixed_index_sum, m.lefschetz_chain), (0, 0, 0));
    assert!(m.fixed_simplices.is_empty());
    assert!(r.checks.iter().all(|c| c.passed));
}

#[test]
fn analyze_square_reflection_fixes_two_vertices() {
    let (r, _) = json(&["analyze", "c4.g", "--map", "2,1,0,3"]);
    let m = r.map.unwrap();
    assert_eq!(m.lefschetz_cohomological, 2);
    let fixed: Vec<(Vec<usize>, i8)> = m.fixed_simplices.iter().map(|f| (f.simplex.clone(), f.index)).collect();
    assert_eq!(fixed, vec![(vec![1], 1), (vec![3], 1)]);
}

#[test]
fn aut_petersen() {
    let (r, _) = json(&["aut", "petersen.g"]);
    let g = r.group.unwrap();
    assert_eq!(g.order, 120);
    assert_eq!(g.lefschetz_multiset, vec![(-5, 1), (0, 24), (1, 80), (3, 15)]);
    assert_eq!(g.average_lefschetz, rational(1, 1));
    assert_eq!(g.orbigraph_euler_characteristic, Some(1));
}

#[test]
fn aut_triangle_curvature() {
    let (r, _) = json(&["aut", "k3.g", "--curvature"]);
    for e in r.group.unwrap().curvature.unwrap() {
        let want = if e.simplex.len() == 1 { rational(1, 3) } else { rational(0, 1) };
        assert_eq!(e.kappa, want, "{:?}", e.simplex);
    }
}

#[test]
fn aut_pentagon_orbigraph() {
    let (r, _) = json(&["aut", "c5.g", "--orbigraph"]);
    let g = r.group.unwrap();
    let o = g.orbigraph.unwrap();
    assert_eq!((o.vertices, o.euler_characteristic), (1, 1));
    assert_eq!(g.average_lefschetz, rational(1, 1));
}

#[test]
fn zeta_of_square_reflection() {
    let (r, _) = json(&["zeta", "c4.g", "--map", "2,1,0,3"]);
    let z = r.map.unwrap().zeta.unwrap();
    assert!(z.det_equals_product && z.series_consistent);
    assert_eq!((z.zeta.numerator, z.zeta.denominator), (ints(&[1, 1]), ints(&[1, -1])));
}

#[test]
fn zeta_of_identity_on_an_edge() {
    let (r, _) = json(&["zeta", "k2.g", "--map", "0,1"]);
    let z = r.map.unwrap().zeta.unwrap().zeta;
    assert_eq!((z.numerator, z.denominator), (ints(&[1]), ints(&[1, -1])));
    assert_eq!(z.factored, Some(vec![(1, -1, 0)]));
}

#[test]
fn zeta_series_order_flag() {
    let (r, _) = json(&["zeta", "c5.g", "--map", "1,2,3,4,0", "--series-order", "17"]);
    assert_eq!(r.map.unwrap().zeta.unwrap().series_order, 17);
}

#[test]
fn zeta_of_petersen_group() {
    let (r, _) = json(&["zeta", "petersen.g", "--group"]);
    let z = r.group.unwrap().zeta.unwrap();
    let p = IntPolynomial::from_i64;
    let expected = [
        (p(&[1, -1]), 10),
        (p(&[1, 1]), 90),
        (p(&[1, 0, 1]), 30),
        (p(&[1, 1, 1]), 40),
        (p(&[1, 0, 0, 0, -1]), 30),
        (p(&[1, 0, 0, 0, 0, -1]), 24),
        (p(&[1, 0, 0, 0, 0, 0, -1]), 20),
    ]
    .iter()
    .fold(IntPolynomial::one(), |acc, (f, e)| &acc * &f.pow(*e));
    let numerator: Vec<BigInt> = z.numerator.into_iter().map(|c| c.0).collect();
    assert_eq!(numerator, expected.coeffs());
    assert_eq!(z.denominator, ints(&[1]));
}

#[test]
fn random_exhaustive_expectations() {
    for (n, num, den) in [("2", 1, 1), ("3", 11, 8), ("4", 43, 32), ("5", 1319, 1024)] {
        let (r, _) = json(&["random", "--n", n, "--exhaustive"]);
        assert_eq!(r.expectation.unwrap().mean, rational(num, den), "n={n}");
    }
    let text = run(&["random", "--n", "3", "--exhaustive"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("11/8"));
}

#[test]
fn sampling_is_reproducible_and_reports_round_trip() {
    let args = ["random", "--n", "5", "--samples", "30", "--p", "0.4", "--seed", "9"];
    let (first, first_text) = json(&args);
    let (_, second_text) = json(&args);
    assert_eq!(first_text, second_text);
    let e = first.expectation.clone().unwrap();
    assert_eq!((e.p, e.seed, e.graphs), (Some(rational(2, 5)), Some(9), 30));
    let again: AnalysisReport = serde_json::from_str(&serde_json::to_string(&first).unwrap()).unwrap();
    assert_eq!(again, first);
}

#[test]
fn big_integers_round_trip_as_json_numbers() {
    let (r, text) = json(&["zeta", "petersen.g", "--group"]);
    assert!(!text.contains("\"num\": \""), "integers must not be quoted");
    let again: AnalysisReport = serde_json::from_str(&serde_json::to_string_pretty(&r).unwrap()).unwrap();
    assert_eq!(again, r);
}

#[test]
fn files_and_map_files() {
    let graph = scratch("square.g", "# a square\nvertices 4\n0 1\n1 2\n2 3\n3 0\n");
    let map = scratch("flip.map", "map 2 1 0 3\n");
    let (r, _) = json(&["analyze", graph.to_str().unwrap(), "--map-file", map.to_str().unwrap()]);
    assert_eq!(r.map.unwrap().lefschetz_cohomological, 2);
    let (named, _) = json(&["analyze", "--named", "cycle:4", "--map", "2,1,0,3"]);
    assert_eq!(named.map.unwrap().lefschetz_cohomological, 2);
}

#[test]
fn verify_corpus_passes() {
    let out = run(&["verify-corpus", "--skip-zeta"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("petersen"));
}

#[test]
fn input_errors_exit_with_one() {
    let bad_graph = scratch("bad.g", "vertices 3\n0 1\n1 x\n");
    let cases: Vec<(Vec<String>, &str)> = vec![
        (vec!["analyze".into(), bad_graph.to_string_lossy().into()], "line 3"),
        (vec!["analyze".into(), "/no/such/file.txt".into()], "file.txt"),
        (vec!["analyze".into(), "c4.g".into(), "--map".into(), "0,0,1,2".into()], "collapses"),
        (vec!["analyze".into(), "c4.g".into(), "--map".into(), "1,2,3".into()], "entries"),
        (vec!["random".into(), "--n".into(), "7".into(), "--exhaustive".into()], "limited to 6"),
        (vec!["random".into(), "--n".into(), "4".into(), "--samples".into(), "3".into(), "--p".into(), "2".into()], "probability"),
        (vec!["zeta".into(), "s2.g".into(), "--map".into(), "0,1,1".into()], "automorphism"),
        (vec!["nonsense".into()], "nonsense"),
    ];
    for (args, needle) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run(&args);
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {stderr}");
        assert!(stderr.contains(needle), "{args:?}: {stderr}");
    }
}

#[test]
fn failed_checks_mark_the_report() {
    let mut r = AnalysisReport::new("analyze");
    r.checks.push(CheckRecord {
        name: "x".into(),
        passed: true,
        left: "1".into(),
        right: "1".into(),
    });
    assert!(r.passed());
    r.checks.push(CheckRecord {
        name: "y".into(),
        passed: false,
        left: "1".into(),
        right: "2".into(),
    });
    assert!(!r.passed());
    assert!(r.to_text().contains("FAIL y"));
}
