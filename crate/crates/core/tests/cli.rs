//! Process-level tests of the installed binary: exit codes, stdout/stderr
//! separation, and file handling, exercised through `std::process::Command`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lando_kit::enumerate::{double_star, path_tree, spider};
use lando_kit::formats::to_tree_file;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lando-kit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_tree(dir: &Path, name: &str, tree: &lando_kit::Tree) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, to_tree_file(tree)).unwrap();
    path
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn parse_diagram_to_json_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested.circles");
    fs::write(&path, "a(b(c()))").unwrap();
    let out = run(&["parse", "--diagram", path.to_str().unwrap(), "--out", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "{\"vertex_count\":4,\"edges\":[{\"u\":0,\"v\":1,\"label\":\"a\"},\
         {\"u\":1,\"v\":2,\"label\":\"b\"},{\"u\":2,\"v\":3,\"label\":\"c\"}]}\n"
    );
    assert!(out.stderr.is_empty());
}

#[test]
fn parse_rejects_malformed_diagram_with_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.circles");
    fs::write(&path, "a(b()").unwrap();
    let out = run(&["parse", "--diagram", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = stderr_of(&out);
    assert!(err.starts_with("error: "), "got {err:?}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn unlinked_reports_both_directions_and_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let tree = write_tree(dir.path(), "p3.tree", &path_tree(3));
    let tree = tree.to_str().unwrap();

    let out = run(&["unlinked", "--tree", tree, "--p", "e1", "--q", "e0,e2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        stdout_of(&out),
        "p on one side of q: yes\nq on one side of p: no\nunlinked: no\n"
    );

    // The empty union is unlinked from everything.
    let out = run(&["unlinked", "--tree", tree, "--p", "", "--q", "e0,e1,e2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "p on one side of q: yes\nq on one side of p: yes\nunlinked: yes\n"
    );

    let out = run(&["unlinked", "--tree", tree, "--p", "nope", "--q", "e0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_rejects_the_swapped_bijection_and_accepts_identity() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_tree(dir.path(), "g.tree", &path_tree(3));
    let h = write_tree(dir.path(), "h.tree", &path_tree(3));
    let (g, h) = (g.to_str().unwrap(), h.to_str().unwrap());

    let out = run(&["check", "--g", g, "--h", h, "--bijection", "e0=e1,e1=e0,e2=e2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        stdout_of(&out),
        "realizing: no\nviolating-pair: (0, 2)\nfailed-direction: second-on-first\n"
    );

    let out = run(&["check", "--g", g, "--h", h, "--bijection", "e0=e0,e1=e1,e2=e2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "realizing: yes\n");
}

#[test]
fn check_identity_on_the_three_leg_spider() {
    let dir = tempfile::tempdir().unwrap();
    let s = spider(3, 3, 3);
    let file = write_tree(dir.path(), "s.tree", &s);
    let identity: Vec<String> = s.edges().iter().map(|e| format!("{0}={0}", e.label)).collect();
    let out = run(&[
        "check",
        "--g",
        file.to_str().unwrap(),
        "--h",
        file.to_str().unwrap(),
        "--bijection",
        &identity.join(","),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "realizing: yes\n");
}

#[test]
fn check_size_mismatch_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_tree(dir.path(), "g.tree", &path_tree(3));
    let h = write_tree(dir.path(), "h.tree", &path_tree(4));
    let out = run(&[
        "check",
        "--g",
        g.to_str().unwrap(),
        "--h",
        h.to_str().unwrap(),
        "--bijection",
        "e0=e0,e1=e1,e2=e2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("different sizes"));
}

#[test]
fn search_all_counts_realizing_bijections() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_tree(dir.path(), "g.tree", &path_tree(3));
    let out = run(&[
        "search",
        "--g",
        g.to_str().unwrap(),
        "--h",
        g.to_str().unwrap(),
        "--strategy",
        "brute",
        "--all",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("realizing-count: 2\n"), "got {text:?}");
    assert!(text.contains("candidates: 6\n"));

    // --all without brute is refused: the pruned search does not enumerate
    // every candidate.
    let out = run(&[
        "search",
        "--g",
        g.to_str().unwrap(),
        "--h",
        g.to_str().unwrap(),
        "--all",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lando_decides_the_nine_circle_pair_negatively() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_tree(dir.path(), "g.tree", &double_star(4, 4));
    let h = write_tree(dir.path(), "h.tree", &spider(3, 3, 3));
    let out = run(&[
        "lando",
        "--g",
        g.to_str().unwrap(),
        "--h",
        h.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_of(&out), "realizable: no\n");
}

#[test]
fn census_writes_csv_and_keeps_stdout_machine_clean() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("census.csv");
    let out = run(&[
        "census",
        "--max-edges",
        "3",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "pairs: 6\nnon-realizable: 0\nrows-written: 6\n");
    // Progress goes to stderr only.
    assert!(stderr_of(&out).contains("census: k=3"));

    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("canonical_g,canonical_h,realizable,witness,nodes,millis")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.contains(",yes,")));
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("x.csv");
    let out = run(&[
        "census",
        "--max-edges",
        "2",
        "--out",
        csv.to_str().unwrap(),
        "--jobs",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("--jobs"));

    let out = run(&["check", "--g", "/nonexistent/g", "--h", "/nonexistent/h", "--bijection", "a=b"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_and_version_exit_0() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("census"));

    let out = run(&["--version"]);
    assert_eq!(out.status.code(), Some(0));
}
