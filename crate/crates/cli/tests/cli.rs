use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iorder-lab"))
        .current_dir(dir)
        .args(args)
        .env_remove("IORDER_LAB_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// A directory holding the Brandt table and its straight left I-order.
fn brandt_dir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["catalog", "brandt", "2"]);
    assert!(out.status.success());
    fs::write(dir.path().join("b2.cay"), &out.stdout).unwrap();
    fs::write(dir.path().join("b2.sub"), "0 1 2 4\n").unwrap();
    dir
}

#[test]
fn catalog_output_parses_back() {
    let dir = brandt_dir();
    let text = fs::read_to_string(dir.path().join("b2.cay")).unwrap();
    assert_eq!(text, "semigroup B2\norder 5\n0 0 0 0 0\n0 1 2 0 0\n0 0 0 1 2\n0 3 4 0 0\n0 0 0 3 4\n");
    let out = run(dir.path(), &["check-inverse", "b2.cay"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("inverses: [0 1 3 2 4]"));
}

#[test]
fn main_pipeline_passes_and_is_reproducible() {
    let dir = brandt_dir();
    let first = run(dir.path(), &["verify-main", "b2.cay", "--sub", "b2.sub"]);
    let second = run(dir.path(), &["verify-main", "b2.cay", "--sub", "b2.sub"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert!(text.starts_with("pipeline: theorem-main\ninput: b2.cay sha256="));
    assert!(text.contains("stage: certify pass"));
    assert!(text.ends_with("result: pass\n"));
    assert!(!text.contains("elapsed_ms"));
    let timed = run(dir.path(), &["--timing", "verify-main", "b2.cay", "--sub", "b2.sub"]);
    assert!(stdout(&timed).contains("elapsed_ms"));
}

#[test]
fn json_report_is_structured() {
    let dir = brandt_dir();
    let out = run(dir.path(), &["--json", "verify-ample", "b2.cay", "--sub", "b2.sub"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["pipeline"], "ample");
    assert_eq!(v["inputs"].as_array().unwrap().len(), 2);
}

#[test]
fn written_relations_feed_the_axiom_checker() {
    let dir = brandt_dir();
    let out = run(dir.path(), &["iorders", "b2.cay", "--sub", "b2.sub", "--write-relations", "s"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(dir.path(), &["axioms", "s.cay", "--rprime", "s.rprime.rel", "--leql", "s.leql.rel"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("M6: pass"));

    // Dropping one off-diagonal pair of R' breaks symmetry.
    let rel = fs::read_to_string(dir.path().join("s.rprime.rel")).unwrap();
    let mut lines: Vec<String> = rel.lines().map(String::from).collect();
    let (row, col) = (1..lines.len())
        .flat_map(|r| (0..lines[r].len()).map(move |c| (r, c)))
        .find(|&(r, c)| r - 1 != c && lines[r].as_bytes()[c] == b'1')
        .expect("R' has an off-diagonal pair");
    lines[row].replace_range(col..col + 1, "0");
    fs::write(dir.path().join("bad.rel"), lines.join("\n") + "\n").unwrap();
    let out = run(dir.path(), &["axioms", "s.cay", "--rprime", "bad.rel", "--leql", "s.leql.rel"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("R' is an equivalence: FAIL"));
}

#[test]
fn unit_group_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["catalog", "in", "2"]);
    fs::write(dir.path().join("i2.cay"), &out.stdout).unwrap();
    fs::write(dir.path().join("u.sub"), "5 6\n").unwrap();
    let out = run(dir.path(), &["verify-main", "i2.cay", "--sub", "u.sub"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("stage: analyze-iorder FAIL"));
    assert!(text.contains("anchor: not a left I-order"));
}

#[test]
fn finite_sweep_over_brandt() {
    let dir = brandt_dir();
    let out = run(dir.path(), &["iorders", "b2.cay", "--all"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("subsemigroups: 15\nleft_iorders: 5\nstraight: 5\n"));
}

#[test]
fn bicyclic_window() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["bicyclic", "--bound", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("skipped: 15\n"));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = brandt_dir();
    fs::write(dir.path().join("crlf.cay"), "semigroup t\r\norder 1\n0\n").unwrap();
    fs::write(dir.path().join("bad.sub"), "0 9\n").unwrap();
    for args in [
        &["check-inverse", "missing.cay"][..],
        &["check-inverse", "crlf.cay"],
        &["verify-main", "b2.cay", "--sub", "bad.sub"],
        &["bicyclic", "--bound", "0"],
    ] {
        let out = run(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "), "{args:?}");
    }
}

#[test]
fn order_guard() {
    let dir = brandt_dir();
    let out = Command::new(env!("CARGO_BIN_EXE_iorder-lab"))
        .current_dir(dir.path())
        .args(["check-inverse", "b2.cay"])
        .env("IORDER_LAB_MAX_ORDER", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_inverse_table_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    // Left zero semigroup on two elements: every element is idempotent, but
    // idempotents do not commute.
    fs::write(dir.path().join("lz.cay"), "semigroup LZ2\norder 2\n0 0\n1 1\n").unwrap();
    let out = run(dir.path(), &["check-inverse", "lz.cay"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("inverse: false\n"));
}

#[test]
fn egg_box_dot() {
    let dir = brandt_dir();
    let out = run(dir.path(), &["green", "b2.cay", "--dot"]);
    let text = stdout(&out);
    assert!(text.starts_with("digraph \"B2\" {"));
    assert!(text.contains("d0 -> d1;"));
}
