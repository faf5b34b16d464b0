use std::fs;
use std::process::{Command, Output};

use sqtop_core::{io, registry};

fn sqtop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqtop")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const X: &str = "[1,4]\n[1,6]\n[2,5]\n[2,6]\n[4,5]\n";
const POINTS: &str = "points:1,points:1,points:1,points:1,points:1";

#[test]
fn sq1_of_x_on_p26() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(&dir, "x.txt", X);
    let o = sqtop(&["sq", "P26", "--n", "1", "--cochain", &x]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[1,4,5]\n");
    let o = sqtop(&["sq", "P26", "--n", "2", "--cochain", &x]);
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn moment_angle_golden() {
    let o = sqtop(&["za", "P26", "--profile"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "H^0 = 1\nH^5 = 10\nH^6 = 15\nH^7 = 6\nH^8 = 1\nH^9 = 1\nSq^1: H^8 -> H^9 rank 1\n"
    );
    let o = sqtop(&["--json", "za", "point-with-ghost"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["betti"], serde_json::json!({"0": 1, "1": 1}));
    assert_eq!(v["hochster"][0]["betti"], serde_json::json!({"-1": 1}));
}

#[test]
fn five_vertex_scan() {
    let o = sqtop(&["scan", "--max-vertices", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "7580 complexes enumerated\n260 candidates after Betti filter\n0 complexes with nontrivial Sq^1\n"
    );
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("elapsed "));
}

#[test]
fn substitution_json_round_trips() {
    let args = format!("points:2,{POINTS}");
    let o = sqtop(&["--json", "substitute", "P26", &args]);
    assert_eq!(o.status.code(), Some(0));
    let parsed = io::parse_complex(&stdout(&o)).unwrap();
    let expected = registry::by_name("P26").unwrap();
    let direct = sqtop_core::substitution(
        &expected,
        &io::load_complex("points:2").map(|p| {
            let mut v = vec![p];
            v.extend((0..5).map(|_| registry::points(1)));
            v
        })
        .unwrap(),
        sqtop_core::LabelingMode::Paper,
    )
    .unwrap();
    assert_eq!(parsed.face_set(), direct.face_set());
    // text output re-parses too
    let o = sqtop(&["substitute", "P26", &args]);
    assert_eq!(io::parse_complex(&stdout(&o)).unwrap(), parsed);
}

#[test]
fn extend_cocycle_golden() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(&dir, "x.txt", X);
    let args = format!("points:2,{POINTS}");
    let o = sqtop(&["extend-cocycle", "P26", &args, "--cochain", &x, "--sq1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[1,4]\n[1,6]\n[2,5]\n[2,6]\n[4,5]\n[4,7]\n[6,7]\nSq^1\n[1,4,5]\n[2,6,7]\n");
}

#[test]
fn join_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(&dir, "join.txt", "base points:2\npair simplex:1 boundary:1\npair simplex:1 boundary:1\n");
    let o = sqtop(&["join", &spec]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(io::parse_complex(&stdout(&o)).unwrap(), registry::boundary(3));
    // relative complex paths resolve against the spec's directory
    write(&dir, "edge.txt", "vertices 2\nfacet 1 2\n");
    let spec = write(&dir, "join2.json", r#"{"base": "points:2", "pairs": [["edge.txt", "boundary:1"], ["edge.txt", "boundary:1"]]}"#);
    let o = sqtop(&["--json", "join", &spec]);
    assert_eq!(io::parse_complex(&stdout(&o)).unwrap(), registry::boundary(3));
}

#[test]
fn complex_files() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "k.txt", &io::complex_to_text(&registry::p26()));
    let o = sqtop(&["info", &f]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("f-vector [6, 15, 10]\n"));
    assert!(text.contains("H~^1 = 1\nH~^2 = 1\n"));
    let o = sqtop(&["cohomology", "cycle:4"]);
    assert_eq!(stdout(&o), "H~^1 = 1\n  [1,2]*\n");
}

#[test]
fn exit_codes() {
    assert_eq!(sqtop(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(sqtop(&["sq"]).status.code(), Some(1));
    assert_eq!(sqtop(&["--help"]).status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(&dir, "bad.txt", "vertices 3\nfacet 1 4\n");
    let o = sqtop(&["info", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&o.stderr).lines().count(), 1);
    let nonface = write(&dir, "c.txt", "[1,2,4]\n");
    assert_eq!(sqtop(&["sq", "P26", "--cochain", &nonface]).status.code(), Some(2));
    assert_eq!(sqtop(&["info", "no-such-complex"]).status.code(), Some(2));
    assert_eq!(sqtop(&["za", "points:17"]).status.code(), Some(3));
    assert_eq!(sqtop(&["scan", "--max-vertices", "6"]).status.code(), Some(3));
}

#[test]
fn vertex_cap_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_sqtop"))
        .args(["za", "points:17"])
        .env("SQTOP_VERTEX_CAP", "17")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H^3 = 136\n"));
    assert_eq!(sqtop(&["za", "points:17", "--max-vertices", "17"]).status.code(), Some(0));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let a = sqtop(&["check", "--seed", "11", "--count", "4"]);
    let b = sqtop(&["check", "--seed", "11", "--count", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a), "seed 11: 4 instances, 0 failures\n");
}

#[test]
fn face_ring_squares() {
    let o = sqtop(&["sr", "points:2", "--degree", "2", "--n", "2", "--verify-ideal", "8"]);
    assert_eq!(
        stdout(&o),
        "Sq^2: F[K]_2 -> F[K]_4 (2 -> 2), rank 2\nx1 -> x1^2\nx2 -> x2^2\nA-ideal: ok (6 monomials)\n"
    );
}
