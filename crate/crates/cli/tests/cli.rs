use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

use tricolor::colorer::{boundary_colorings, parse_col1, Coloring};
use tricolor::plane::pg1;
use tricolor::verify_coloring;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let out: Output = Command::new(env!("CARGO_BIN_EXE_tricolor")).args(args).output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = if stdout.trim().is_empty() { Value::Null } else { serde_json::from_str(&stdout).expect("stdout is JSON") };
    (out.status.code().unwrap(), json, String::from_utf8(out.stderr).unwrap())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_triangle_echoes_digest() {
    let file = corpus("triangle.pg1");
    let (code, json, _) = run(&["check", path_str(&file)]);
    assert_eq!(code, 0);
    assert_eq!(json["in_class"], true);
    assert_eq!(json["command"], "check");
    let expected = hex::encode(Sha256::digest(std::fs::read(&file).unwrap()));
    assert_eq!(json["input_digest"], expected);
}

#[test]
fn check_reports_five_cycle_witness() {
    let (code, json, _) = run(&["check", path_str(&corpus("five_cycle.pg1"))]);
    assert_eq!(code, 0);
    assert_eq!(json["in_class"], false);
    assert_eq!(json["witnesses"]["five_cycle"].as_array().unwrap().len(), 5);
}

#[test]
fn malformed_input_gives_position() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.pg1");
    std::fs::write(&file, "pg1 3\na: b c\nb: c a\nc: a x\n").unwrap();
    let (code, json, stderr) = run(&["check", path_str(&file)]);
    assert_eq!(code, 3);
    assert!(stderr.contains(":4:6:"), "{stderr}");
    assert_eq!(json["error"]["line"], 4);
    assert_eq!(json["error"]["column"], 6);
}

#[test]
fn monochromatic_edge_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let col = dir.path().join("bad.col");
    std::fs::write(&col, "a 0\nb 0\nc 1\n").unwrap();
    let tri = dir.path().join("t.pg1");
    std::fs::write(&tri, "pg1 3\na: b c\nb: c a\nc: a b\n").unwrap();
    let (code, json, _) = run(&["verify", path_str(&tri), "--coloring", path_str(&col)]);
    assert_eq!(code, 2);
    assert_eq!(json["valid"], false);
    assert_eq!(json["monochromatic_edges"][0], serde_json::json!(["a", "b"]));
}

#[test]
fn every_boundary_coloring_of_the_chord_instance_extends() {
    let file = corpus("lemma3_s1.pg1");
    let text = std::fs::read_to_string(&file).unwrap();
    let graph = pg1::parse(&text).unwrap();
    let face = pg1::face_hint(&text).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let mut tried = 0;
    for colors in boundary_colorings(face.len()) {
        let col: String = face.iter().zip(&colors).map(|(l, c)| format!("{l} {c}\n")).collect();
        let boundary = parse_col1(&graph, &col).unwrap();
        if !boundary.is_proper(&graph) {
            continue;
        }
        let (cin, cout) = (dir.path().join("in.col"), dir.path().join("out.col"));
        std::fs::write(&cin, &col).unwrap();
        let (code, json, _) = run(&["extend", path_str(&file), "--coloring", path_str(&cin), "--out", path_str(&cout)]);
        assert_eq!(code, 0, "{col}");
        assert_eq!(json["verified"], true);
        let total: Coloring = parse_col1(&graph, &std::fs::read_to_string(&cout).unwrap()).unwrap();
        assert!(verify_coloring(&graph, &total) && total.extends(&boundary));
        tried += 1;
    }
    assert!(tried > 0);
}

#[test]
fn improper_boundary_is_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    let col = dir.path().join("b.col");
    std::fs::write(&col, "0 0\n1 0\n").unwrap();
    let (code, json, _) = run(&["extend", path_str(&corpus("nine_cycle.pg1")), "--coloring", path_str(&col)]);
    assert_eq!(code, 3);
    assert_eq!(json["verdict"], "invalid");
}

#[test]
fn colouring_outside_the_class_is_invalid_input() {
    let (code, _, stderr) = run(&["color", path_str(&corpus("k4.pg1"))]);
    assert_eq!(code, 3, "{stderr}");
}

#[test]
fn generate_color_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (g, c) = (dir.path().join("g.pg1"), dir.path().join("g.col"));
    let args = ["gen", "--n", "18", "--seed", "7", "--triangle", "--four-or-six", "--out", path_str(&g)];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(first["in_class"], true);
    let (_, second, _) = run(&args);
    assert_eq!(first, second);

    let (code, json, _) = run(&["color", path_str(&g), "--out", path_str(&c)]);
    assert_eq!(code, 0);
    assert_eq!(json["trace"]["sigma_strictly_decreases"], true);
    let (code, _, _) = run(&["verify", path_str(&g), "--coloring", path_str(&c)]);
    assert_eq!(code, 0);
}

#[test]
fn analyze_reads_the_face_line() {
    let (code, json, _) = run(&["analyze", path_str(&corpus("ear_basic.pg1"))]);
    assert_eq!(code, 0);
    assert_eq!(json["analysis"]["ears"].as_array().unwrap().len(), 1);
    assert_eq!(json["analysis"]["degree"], 11);
}

#[test]
fn reduce_prints_parts_and_transfer() {
    let dir = tempfile::tempdir().unwrap();
    let file = corpus("lemma3_s1.pg1");
    let (code, json, _) = run(&[
        "reduce",
        path_str(&file),
        "--op",
        "remove-and-subdivide",
        "--chord",
        "0,2",
        "--removed",
        "1",
        "--out-dir",
        path_str(dir.path()),
    ]);
    assert_eq!(code, 0);
    assert_eq!(json["op"], "remove-and-subdivide");
    let part = json["parts"][0]["pg1"].as_str().unwrap();
    assert_eq!(std::fs::read_to_string(dir.path().join("part0.pg1")).unwrap(), part);
    assert!(json["parts"][0]["sigma"].as_u64().unwrap() < json["sigma"].as_u64().unwrap());
    assert!(json["transfer"]["parts"][0]["image"]["1"].is_string());

    let (code, _, _) = run(&["reduce", path_str(&file), "--op", "remove-and-subdivide", "--chord", "0,4", "--removed", "1"]);
    assert_eq!(code, 3);
}

#[test]
fn audit_report_is_independent_of_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let cand = dir.path().join("c.jsonl");
    let base = ["audit", "--theorem-graphs", "3", "--corollary-graphs", "4", "--fixtures-per-kind", "2", "--json"];
    let mut one = base.to_vec();
    one.extend(["--jobs", "1", "--candidates", path_str(&cand)]);
    let mut two = base.to_vec();
    two.extend(["--jobs", "3", "--candidates", path_str(&cand)]);
    let (c1, a, stderr) = run(&one);
    let (c2, b, _) = run(&two);
    assert_eq!((c1, c2), (0, 0), "{stderr}");
    assert_eq!(a["report"], b["report"]);
    assert_eq!(a["input_digest"], b["input_digest"]);
    assert!(stderr.lines().any(|l| l.starts_with("7 ")));
}
