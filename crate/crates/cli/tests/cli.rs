use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace { dir: tempfile::tempdir().unwrap() }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        fs::write(&path, contents).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn recolour(args: &[&str]) -> Output {
    recolour_with_env(args, &[])
}

fn recolour_with_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_recolour"));
    cmd.args(args).env_remove("RECOLOR_LIMIT");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const K4_MINUS_EDGE: &str = "4 5\n0 1\n0 2\n0 3\n1 2\n1 3\n";
const C6: &str = "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n";
const C5: &str = "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n";
const K4: &str = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
const P3: &str = "3 2\n0 1\n1 2\n";

#[test]
fn path_on_non_regular_graph_is_valid() {
    let ws = Workspace::new();
    let g = ws.file("g.txt", K4_MINUS_EDGE);
    let a = ws.file("a.txt", "4\n1 2 3 3\n");
    let b = ws.file("b.txt", "4\n2 1 4 3\n");
    let seq = ws.path("seq.txt");
    let out = recolour(&[
        "path", "--graph", s(&g), "--colouring-a", s(&a), "--colouring-b", s(&b), "--out", s(&seq),
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("valid: true"));

    let out = recolour(&["validate", "--graph", s(&g), "--colouring", s(&a), "--sequence", s(&seq)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).ends_with("4\n2 1 4 3\n"), "{}", stdout(&out));
}

#[test]
fn path_outside_constructive_regime_uses_oracle() {
    let ws = Workspace::new();
    let g = ws.file("g.txt", P3);
    let a = ws.file("a.txt", "3\n1 2 1\n");
    let b = ws.file("b.txt", "3\n1 2 3\n");
    let out = recolour(&[
        "--format", "json", "path", "--graph", s(&g), "--colouring-a", s(&a), "--colouring-b", s(&b),
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["method"], "oracle");
    assert_eq!(v["length"], 1);
    assert_eq!(v["valid"], true);
}

#[test]
fn path_from_frozen_colouring_is_negative() {
    let ws = Workspace::new();
    let g = ws.file("g.txt", C6);
    let a = ws.file("a.txt", "3\n1 2 3 1 2 3\n");
    let b = ws.file("b.txt", "3\n1 2 1 2 1 2\n");
    let args = ["--graph", s(&g), "--colouring-a", s(&a), "--colouring-b", s(&b)];
    assert_eq!(code(&recolour(&[&["path"], &args[..]].concat())), 2);
    let out = recolour(&[&["--format", "json", "decide"], &args[..]].concat());
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["answer"], "no");
}

#[test]
fn malformed_inputs_exit_one() {
    let ws = Workspace::new();
    let bad = ws.file("bad.txt", "3 2\n0 1\n");
    let c = ws.file("c.txt", "3\n1 2 1\n");
    let out = recolour(&["path", "--graph", s(&bad), "--colouring-a", s(&c), "--colouring-b", s(&c)]);
    assert_eq!(code(&out), 1);
    assert!(!out.stderr.is_empty());

    let loop_graph = ws.file("loop.txt", "2 1\n0 0\n");
    assert_eq!(code(&recolour(&["degeneracy", "--graph", s(&loop_graph)])), 1);

    let g = ws.file("g.txt", P3);
    let short = ws.file("short.txt", "3\n1 2\n");
    let seq = ws.file("seq.txt", "steps: 0\n");
    let out = recolour(&["validate", "--graph", s(&g), "--colouring", s(&short), "--sequence", s(&seq)]);
    assert_eq!(code(&out), 1);
    let improper = ws.file("improper.txt", "3\n1 1 2\n");
    let out = recolour(&["validate", "--graph", s(&g), "--colouring", s(&improper), "--sequence", s(&seq)]);
    assert_eq!(code(&out), 1);
    assert_eq!(code(&recolour(&["explore", "--graph", s(&g), "--k", "0"])), 2);
}

#[test]
fn validate_reports_first_bad_step() {
    let ws = Workspace::new();
    let g = ws.file("g.txt", P3);
    let c = ws.file("c.txt", "3\n1 2 1\n");
    let empty = ws.file("empty.txt", "steps: 0\n");
    assert_eq!(code(&recolour(&["validate", "--graph", s(&g), "--colouring", s(&c), "--sequence", s(&empty)])), 0);

    let bad = ws.file("bad.txt", "steps: 2\n0 3\n1 3\n");
    let out = recolour(&[
        "--format", "json", "validate", "--graph", s(&g), "--colouring", s(&c), "--sequence", s(&bad),
    ]);
    assert_eq!(code(&out), 2);
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert_eq!(v["failedStep"], 1);
    let out = recolour(&["validate", "--graph", s(&g), "--colouring", s(&c), "--sequence", s(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("step 1"), "{}", stdout(&out));
}

fn explore(graph: &str, k: &str) -> Value {
    let ws = Workspace::new();
    let g = ws.file("g.txt", graph);
    let out = recolour(&["--format", "json", "explore", "--graph", s(&g), "--k", k]);
    assert_eq!(code(&out), 0);
    json(&out)
}

fn nontrivial(v: &Value) -> usize {
    v["components"].as_array().unwrap().iter().filter(|c| c["size"].as_u64().unwrap() >= 2).count()
}

#[test]
fn explore_summaries() {
    let k4 = explore(K4, "4");
    assert_eq!(k4["totalColourings"], 24);
    assert_eq!(k4["frozenCount"], 24);
    assert_eq!(k4["components"].as_array().unwrap().len(), 24);

    assert!(nontrivial(&explore(C5, "3")) >= 2);

    let p3 = explore(P3, "3");
    assert_eq!(p3["totalColourings"], 12);
    assert_eq!(p3["components"].as_array().unwrap().len(), 1);
}

#[test]
fn state_limit_from_environment_is_inconclusive() {
    let ws = Workspace::new();
    let g = ws.file("g.txt", K4);
    let out = recolour_with_env(&["explore", "--graph", s(&g), "--k", "4"], &[("RECOLOR_LIMIT", "10")]);
    assert_eq!(code(&out), 3);
    assert_eq!(code(&recolour(&["--limit", "10", "census", "--graph", s(&g), "--k", "4"])), 3);
    // Minimum degree 3 leaves a spare colour at k = 5, so no enumeration is needed.
    let out = recolour(&["--limit", "10", "--format", "json", "census", "--graph", s(&g), "--k", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["count"], 0);
}

#[test]
fn census_classify_degeneracy_eliminate() {
    let ws = Workspace::new();
    let c6 = ws.file("c6.txt", C6);
    let out = recolour(&["--format", "json", "census", "--graph", s(&c6), "--k", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["count"], 6);

    let out = recolour(&["--format", "json", "classify", "--graph", s(&c6), "--k", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["maxDegree"], 2);

    let g = ws.file("g.txt", K4_MINUS_EDGE);
    let out = recolour(&["--format", "json", "degeneracy", "--graph", s(&g)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["degeneracy"], 2);

    let c = ws.file("c.txt", "4\n1 2 4 3\n");
    let seq = ws.path("seq.txt");
    let out = recolour(&["eliminate", "--graph", s(&g), "--colouring", s(&c), "--out", s(&seq)]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let out = recolour(&["validate", "--graph", s(&g), "--colouring", s(&c), "--sequence", s(&seq)]);
    assert_eq!(code(&out), 0);
    assert!(!stdout(&out).lines().nth(2).unwrap().contains('4'));
}

#[test]
fn json_output_is_deterministic() {
    let ws = Workspace::new();
    let g = ws.file("g.txt", C6);
    for cmd in ["explore", "census", "classify"] {
        let run = || stdout(&recolour(&["--format", "json", cmd, "--graph", s(&g), "--k", "3"]));
        assert_eq!(run(), run(), "{cmd}");
    }
    let cache = ws.path("cache");
    let corpus = |jobs: &str| {
        let out = recolour(&[
            "--format", "json", "verify-corpus", "--max-n", "5", "--seed", "3", "--jobs", jobs,
            "--cache-dir", s(&cache),
        ]);
        assert_eq!(code(&out), 0);
        stdout(&out)
    };
    assert_eq!(corpus("1"), corpus("2"));
}

#[test]
fn verify_corpus_regenerates_corrupt_cache() {
    let ws = Workspace::new();
    let cache = ws.path("cache");
    let run = || recolour(&["verify-corpus", "--max-n", "4", "--cache-dir", s(&cache)]);
    let first = run();
    assert_eq!(code(&first), 0, "{}", stdout(&first));
    assert!(stdout(&first).starts_with("6 connected graphs"));

    let victim = walk(&cache).into_iter().find(|p| p.extension().is_some_and(|x| x == "edges")).unwrap();
    fs::write(&victim, "4 0\n").unwrap();
    let second = run();
    assert_eq!(code(&second), 0);
    assert!(String::from_utf8_lossy(&second.stderr).contains("regenerated"));
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn verify_corpus_reports_counterexamples() {
    let ws = Workspace::new();
    let out_dir = ws.path("repro");
    let out = recolour(&[
        "verify-corpus", "--min-n", "8", "--max-n", "8", "--max-degree", "2", "--k", "3",
        "--cache-dir", s(&ws.path("cache")), "--out", s(&out_dir),
    ]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    assert!(stdout(&out).contains("COUNTEREXAMPLE theorem-delta-plus-one"));
    let mut repro = walk(&out_dir);
    repro.sort();
    assert_eq!(repro.len(), 2);
    let (colouring, graph) = (&repro[0], &repro[1]);
    assert_eq!(fs::read_to_string(graph).unwrap().lines().next(), Some("8 8"));
    assert_eq!(colouring.extension().unwrap(), "colouring");
    let out = recolour(&["--format", "json", "decide", "--graph", s(graph), "--colouring-a", s(colouring),
        "--colouring-b", s(colouring)]);
    assert_eq!(code(&out), 0);
}

fn walk(dir: &Path) -> Vec<PathBuf> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.is_dir() {
            files.extend(walk(&path));
        } else {
            files.push(path);
        }
    }
    files
}
