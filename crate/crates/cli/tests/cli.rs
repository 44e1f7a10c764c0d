use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_oneplanar"))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures")
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> (i32, String) {
    let Output { status, stdout, .. } = bin().args(args).output().expect("binary runs");
    (
        status.code().expect("exit code"),
        String::from_utf8(stdout).unwrap(),
    )
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn theorem_on_fig1() {
    let f = fixtures().join("fig1.1pd");
    let (code, out) = run(&["theorem", path_str(&f)]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("n7=24"));
    assert!(out.contains("chain=72>=72>=72>=72>=72"));
}

#[test]
fn theorem_precondition_failure_exits_one() {
    let f = fixtures().join("k6.1pd");
    let (code, out) = run(&["theorem", path_str(&f)]);
    assert_eq!(code, 1);
    assert!(out.contains("precondition_failed"));
}

#[test]
fn validate_reports_adjacent_crossing_with_line() {
    let (code, out) = run(&["validate", path_str(&data("bad_adjacent_cross.1pd"))]);
    assert_eq!(code, 1);
    assert!(out.contains("line=18 adjacent edges cross"), "{out}");
}

#[test]
fn parse_errors_exit_two() {
    let (code, _) = run(&["validate", path_str(&data("truncated.1pd"))]);
    assert_eq!(code, 2);
    let (code, _) = run(&["validate", "/nonexistent/file.1pd"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn every_fixture_validates_and_stats() {
    for name in ["fig1", "k4_planar", "k4_crossed", "k6", "c4", "octahedron"] {
        let f = fixtures().join(format!("{name}.1pd"));
        assert_eq!(run(&["validate", path_str(&f)]).0, 0, "{name}");
        let (code, out) = run(&["stats", path_str(&f)]);
        assert_eq!(code, 0, "{name}: {out}");
    }
}

#[test]
fn stats_on_fig1() {
    let (code, out) = run(&["stats", path_str(&fixtures().join("fig1.1pd"))]);
    assert_eq!(code, 0);
    for line in ["n=24", "m=84", "x=18", "t=8", "n7=24", "triangulated=true"] {
        assert!(out.lines().any(|l| l == line), "missing {line}");
    }
}

#[test]
fn glue_then_matching() {
    let dir = TempDir::new().unwrap();
    let glued = dir.path().join("glue_k2.1pd");
    let (code, out) = run(&["construct", "glue", "--copies", "2", "-o", path_str(&glued)]);
    assert_eq!(code, 0);
    assert!(out.contains("hub_degree=14"));
    let (code, out) = run(&["matching", path_str(&glued)]);
    assert_eq!(code, 0);
    assert!(out.contains("size<=23"));
    assert!(out.contains("certificate U={0} odd_components=2 bound=23"));
    let (code, out) = run(&["matching", path_str(&glued), "--certificate", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("bound=23"));
    assert_eq!(run(&["theorem", path_str(&glued)]).0, 0);
}

#[test]
fn triangulate_writes_multigraph() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("c4_tri.1pd");
    let (code, out) = run(&[
        "triangulate",
        path_str(&fixtures().join("c4.1pd")),
        "-o",
        path_str(&out_path),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("inserted=2"));
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.contains("mode multigraph"));
    let (code, out) = run(&["stats", path_str(&out_path)]);
    assert_eq!(code, 0);
    assert!(out.contains("identity edge_count [m = 3n-6+x] left=6 right=6 holds"));
}

#[test]
fn render_fig1() {
    let dir = TempDir::new().unwrap();
    let svg = dir.path().join("fig1.svg");
    let (code, out) = run(&[
        "render",
        path_str(&fixtures().join("fig1.1pd")),
        "-o",
        path_str(&svg),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("crossings=18"));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<?xml"));
    assert_eq!(text.matches(r#"class="crossing""#).count(), 18);
}

#[test]
fn fixture_command_round_trips() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("s.1pd");
    assert_eq!(
        run(&["construct", "fixture", "stacked(5)", "-o", path_str(&path)]).0,
        0
    );
    let (code, out) = run(&["stats", path_str(&path)]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "n=8"));
    assert_eq!(
        run(&["construct", "fixture", "nope", "-o", path_str(&path)]).0,
        2
    );
}
