//! Black-box tests of the binary: JSON shapes, exit codes, SVG output and
//! stdin handling.

use std::io::Write as _;
use std::process::{Command, Output, Stdio};

fn bdst(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bdst")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn gen_then_emst_reports_the_star() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("sq.txt");
    let out = bdst(&["gen", "square_center", "-o", file.to_str().unwrap()]);
    assert!(out.status.success());

    let rep = stdout_json(&bdst(&["emst", file.to_str().unwrap()]));
    assert_eq!(rep["n"], 5);
    assert!(rep["k"].is_null());
    assert_eq!(rep["edges"].as_array().unwrap().len(), 4);
    assert!((rep["bottleneck"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(rep["maxDegree"], 4);
}

#[test]
fn tree_report_stays_within_guarantee() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("pts.txt");
    assert!(bdst(&["gen", "random", "--n", "40", "--seed", "9", "-o", file.to_str().unwrap()])
        .status
        .success());
    for (degree, factor) in [("2", 3.0), ("3", 3f64.sqrt()), ("4", 2f64.sqrt())] {
        let rep = stdout_json(&bdst(&["tree", file.to_str().unwrap(), "--degree", degree]));
        let ratio = rep["ratio"].as_f64().unwrap();
        assert!(ratio <= factor * (1.0 + 1e-9), "degree {degree}: ratio {ratio}");
        assert!(rep["maxDegree"].as_u64().unwrap() <= degree.parse().unwrap());
        assert!((rep["guarantee"].as_f64().unwrap() - factor).abs() < 1e-12);
    }
}

#[test]
fn ratio_square_degree_three_is_sqrt_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("sq.txt");
    bdst(&["gen", "square_center", "-o", file.to_str().unwrap()]);
    let rep = stdout_json(&bdst(&["ratio", file.to_str().unwrap(), "--degree", "3"]));
    assert!((rep["ratio"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-9);
    assert!((rep["bstValue"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn check_passes_on_all_shipped_sets() {
    let dir = tempfile::tempdir().unwrap();
    for name in
        ["square_center", "pentagon_center", "triangle_center", "spider_beta2", "hex_star", "lower19", "random"]
    {
        let file = dir.path().join(format!("{name}.txt"));
        assert!(bdst(&["gen", name, "-o", file.to_str().unwrap()]).status.success());
        let out = bdst(&["check", file.to_str().unwrap()]);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stdout));
        let reports: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(reports.as_array().unwrap().len(), 4);
    }
}

#[test]
fn check_subset_flag_limits_reports() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("sq.txt");
    bdst(&["gen", "square_center", "-o", file.to_str().unwrap()]);
    let out = bdst(&["check", file.to_str().unwrap(), "--check", "chords"]);
    let reports = stdout_json(&out);
    let arr = reports.as_array().unwrap();
    assert_eq!(arr.len(), 1);
    assert_eq!(arr[0]["check"], "chord-bound");
}

#[test]
fn repro_targets_all_pass() {
    for target in ["beta2-sqrt7", "beta3-sqrt2", "beta4-pentagon", "spider-beta2"] {
        let out = bdst(&["repro", target]);
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(out.status.success(), "{target}: {text}");
        assert!(text.contains("PASS"), "{target}: {text}");
        assert!(!text.contains("FAIL"), "{target}: {text}");
        assert!(text.contains("measured") && text.contains("expected"), "{target}: {text}");
    }
}

#[test]
fn exact_budget_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("r.txt");
    bdst(&["gen", "random", "--n", "25", "--seed", "1", "-o", file.to_str().unwrap()]);
    let out = bdst(&["exact", file.to_str().unwrap(), "--degree", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit"));

    // raising the flag past the library's own cap still fails cleanly
    let out = bdst(&["exact", file.to_str().unwrap(), "--degree", "2", "--max-exact-n", "30"]);
    assert_eq!(out.status.code(), Some(2));

    // and raising it within the cap runs (degree 5 equals the tree bound)
    let file5 = dir.path().join("r5.txt");
    bdst(&["gen", "random", "--n", "13", "--seed", "1", "-o", file5.to_str().unwrap()]);
    let out = bdst(&["exact", file5.to_str().unwrap(), "--degree", "5", "--max-exact-n", "14"]);
    assert!(out.status.success());
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.txt");
    std::fs::write(&file, "0.0 0.0\n1.0\n").unwrap();
    let out = bdst(&["emst", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = bdst(&["gen", "no_such_shape"]);
    assert_eq!(out.status.code(), Some(2));

    let out = bdst(&["emst", dir.path().join("missing.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn degree_flag_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("sq.txt");
    bdst(&["gen", "square_center", "-o", file.to_str().unwrap()]);
    let out = bdst(&["tree", file.to_str().unwrap(), "--degree", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bdst(&["exact", file.to_str().unwrap(), "--degree", "6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn svg_output_counts_elements() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("l19.txt");
    let svg = dir.path().join("l19.svg");
    bdst(&["gen", "lower19", "-o", pts.to_str().unwrap()]);
    let out = bdst(&["emst", pts.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches("<circle").count(), 19);
    assert_eq!(text.matches("<line").count(), 18);

    let overlay = dir.path().join("overlay.svg");
    let out =
        bdst(&["tree", pts.to_str().unwrap(), "--degree", "3", "--svg", overlay.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&overlay).unwrap();
    assert!(text.contains("layer-0") && text.contains("layer-1"));
}

#[test]
fn stdin_dash_reads_points() {
    let gen = bdst(&["gen", "spider_beta2"]);
    assert!(gen.status.success());
    let mut child = Command::new(env!("CARGO_BIN_EXE_bdst"))
        .args(["emst", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all(&gen.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    let rep = stdout_json(&out);
    assert_eq!(rep["n"], 7);
    assert_eq!(rep["edges"].as_array().unwrap().len(), 6);
}

#[test]
fn gen_round_trips_through_the_text_format() {
    let gen = bdst(&["gen", "pentagon_center"]);
    let text = String::from_utf8(gen.stdout).unwrap();
    let ps = bdst::io::parse_points(&text).unwrap();
    let direct = bdst::constructions::pentagon_center(1.0);
    for (a, b) in ps.points().iter().zip(direct.points()) {
        assert!((a.x - b.x).abs() <= 1e-12 && (a.y - b.y).abs() <= 1e-12);
    }
}
