use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphcap"))
        .args(args)
        .env_remove("GRAPHCAP_MAX_VERTICES")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn field(report: &str, name: &str) -> String {
    let prefix = format!("{name}: ");
    report
        .lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no {name} in\n{report}"))
        .to_string()
}

fn number(report: &str, name: &str) -> f64 {
    field(report, name).parse().unwrap()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("graphcap-cli-{}-{name}", std::process::id()))
}

#[test]
fn info_pentagon() {
    let out = run(&["info", "C:5"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout(&out);
    assert_eq!(field(&report, "alpha"), "2");
    assert_eq!(field(&report, "chi_fractional"), "5/2");
    assert!((number(&report, "theta_L") - 5f64.sqrt()).abs() < 1e-6);
    assert!((number(&report, "q'") - 5f64.sqrt()).abs() < 1e-6);
    assert_eq!(field(&report, "vertex_transitive"), "true");
}

#[test]
fn info_kneser_and_clique() {
    let report = stdout(&run(&["info", "kneser:5,2"]));
    assert_eq!(field(&report, "alpha"), "4");
    assert!((number(&report, "theta_L") - 4.0).abs() < 1e-9);
    let report = stdout(&run(&["info", "K:3"]));
    assert_eq!(field(&report, "alpha"), "1");
    assert!((number(&report, "theta_L") - 1.0).abs() < 1e-9);
}

#[test]
fn info_spec_round_trips_to_the_same_edges() {
    for spec in [
        "C:5",
        "kneser:5,2",
        "K:3",
        "sum:1xK1+1xK2",
        "pow:C:5,2",
        "pow:K:2,3",
    ] {
        let first = stdout(&run(&["info", spec]));
        let printed = field(&first, "graph");
        let again = stdout(&run(&["info", &printed]));
        assert_eq!(first, again, "{spec}");
    }
    let path = temp_path("c5.txt");
    std::fs::write(&path, "p 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 0\n").unwrap();
    let spec = format!("file:{}", path.display());
    let from_file = stdout(&run(&["info", &spec]));
    let cycle = stdout(&run(&["info", "C:5"]));
    assert_eq!(from_file.replace(&spec, "C:5"), cycle);
    std::fs::remove_file(path).ok();
}

#[test]
fn parse_errors_exit_2_with_a_position() {
    for (spec, column) in [("Q:3", 1), ("K:x", 3), ("kneser:2,3", 10), ("pow:C:5", 8)] {
        let out = run(&["info", spec]);
        assert_eq!(out.status.code(), Some(2), "{spec}");
        assert!(
            stderr(&out).contains(&format!("column {column}")),
            "{}",
            stderr(&out)
        );
    }
    let out = run(&["curve", "C:5", "--rules", "vt,nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["info", "file:/nonexistent/graph.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

fn csv_rows(text: &str) -> Vec<(f64, String, String, f64)> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        reader.headers().unwrap(),
        vec!["delta", "bound", "kind", "rate"]
    );
    reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            (
                r[0].parse().unwrap(),
                r[1].to_string(),
                r[2].to_string(),
                r[3].parse().unwrap(),
            )
        })
        .collect()
}

#[test]
fn pentagon_curves() {
    let out = run(&[
        "curve",
        "C:5",
        "--rules",
        "vt,power:2,lp",
        "--step",
        "0.005",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("power:r=2 upper skipped"));
    let rows = csv_rows(&stdout(&out));
    let bounds: std::collections::BTreeSet<(&str, &str)> =
        rows.iter().map(|r| (r.1.as_str(), r.2.as_str())).collect();
    for b in [
        ("vt-GV", "lower"),
        ("power:r=2", "lower"),
        ("LP-converse", "upper"),
    ] {
        assert!(bounds.contains(&b), "{b:?}");
    }
    // base 2 by default: every curve starts at log2 5
    for r in rows.iter().filter(|r| r.0 == 0.0) {
        assert!((r.3 - 5f64.log2()).abs() < 1e-9, "{r:?}");
    }
}

#[test]
fn sum_of_cliques_curves() {
    let out = run(&[
        "curve",
        "sum:1xK1+1xK2",
        "--rules",
        "sumclique-gv,sumclique-lp",
        "--delta-min",
        "0.2",
        "--delta-max",
        "0.3",
        "--step",
        "0.0001",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&stdout(&out));
    let at_quarter = rows
        .iter()
        .find(|r| (r.0 - 0.25).abs() < 1e-9 && r.1 == "sumclique-gv")
        .unwrap();
    assert!((at_quarter.3 - 1.0).abs() < 1e-9);
    let first_upper = rows
        .iter()
        .find(|r| r.1 == "sumclique-lp" && r.3 <= 1.0 + 1e-12)
        .unwrap();
    assert!((first_upper.0 - 0.2568).abs() <= 0.001, "{first_upper:?}");
}

#[test]
fn binary_curves_and_formats() {
    let csv = run(&["curve", "K:2", "--rules", "vt,lp", "--step", "0.1"]);
    assert_eq!(csv.status.code(), Some(0));
    let again = run(&["curve", "K:2", "--rules", "vt,lp", "--step", "0.1"]);
    assert_eq!(csv.stdout, again.stdout, "CSV output is deterministic");
    let rows = csv_rows(&stdout(&csv));
    let half = rows
        .iter()
        .filter(|r| (r.0 - 0.5).abs() < 1e-12 && r.1 != "envelope");
    assert!(half.into_iter().all(|r| r.3.abs() < 1e-12));

    let json = run(&[
        "curve",
        "K:2",
        "--rules",
        "vt,lp",
        "--log-base",
        "e",
        "--format",
        "json",
    ]);
    let json = stdout(&json);
    assert!(json.contains("\"schema\": 1"));
    assert!(json.contains(&format!("{}", std::f64::consts::LN_2)));

    let path = temp_path("k2.svg");
    let out = run(&[
        "curve",
        "K:2",
        "--rules",
        "vt,lp",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<polyline").count(), 2);
    std::fs::remove_file(path).ok();
}

#[test]
fn curve_without_applicable_rules_fails() {
    let out = run(&["curve", "sum:1xK1+1xK2", "--rules", "lp"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("warning: lp skipped"));
}

#[test]
fn verify_pentagon() {
    let out = run(&["verify", "C:5", "--max-n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let table = stdout(&out);
    assert_eq!(
        table.lines().filter(|l| l.ends_with(" ok")).count(),
        2 + 3 + 4
    );
}

#[test]
fn verify_binary_row() {
    let out = run(&["verify", "K:2", "--max-n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let table = stdout(&out);
    let row = table
        .lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>())
        .find(|w| w.len() >= 5 && w[0] == "5" && w[1] == "2")
        .unwrap();
    assert_eq!(row[2], "2");
    assert_eq!(row[3], "4");
    assert!(row[4].parse::<f64>().unwrap() >= 4.0);
}

#[test]
fn verify_skips_lp_for_squared_pentagon() {
    let out = run(&["verify", "pow:C:5,2", "--max-n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("LP side skipped: NON_CONSTANT_C"));
}

#[test]
fn caps_exit_3() {
    let out = run(&["verify", "C:5", "--max-n", "4", "--node-budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("unresolved"));
    let out = Command::new(env!("CARGO_BIN_EXE_graphcap"))
        .args(["info", "pow:C:5,3"])
        .env("GRAPHCAP_MAX_VERTICES", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn figure_pentagon_reports_the_crossover() {
    let out = run(&["figure", "pentagon"]);
    assert_eq!(out.status.code(), Some(0));
    let note = stderr(&out);
    let d: f64 = note
        .lines()
        .find_map(|l| l.strip_prefix("vt-GV is above the power:r=2 lower bound up to delta = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((d - 0.353).abs() <= 0.005);
    // the squared-pentagon lower bound stops at delta = 1/2
    assert_eq!(csv_rows(&stdout(&out)).len(), 1001 * 5 - 500);
}
