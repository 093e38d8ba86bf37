use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn packedit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_packedit")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn fig1() -> String {
    fixture("fig1.graph").display().to_string()
}

fn fig1_packing() -> String {
    fixture("fig1_right.packing").display().to_string()
}

#[test]
fn fig1_solves_with_three_deletions() {
    let dir = tempfile::tempdir().unwrap();
    let edits = dir.path().join("edits.txt");
    let stats = dir.path().join("stats.json");
    let out = packedit(&[
        "solve", "--problem", "triangle-del", "--input", &fig1(), "--packing", &fig1_packing(), "--k", "3",
        "--emit-edits", edits.to_str().unwrap(), "--stats", stats.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&edits).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("del ")).count(), 3);

    let verify = packedit(&[
        "verify", "--problem", "triangle-del", "--input", &fig1(), "--edits", edits.to_str().unwrap(), "--k", "3",
    ]);
    assert_eq!(code(&verify), 0);

    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&stats).unwrap()).unwrap();
    for key in ["n", "m", "k", "h", "ell", "branch_nodes", "max_depth", "engine", "wall_time_s"] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
    assert_eq!(json["n"], 8);
    assert_eq!(json["m"], 14);
    assert_eq!(json["h"], 3);
    assert_eq!(json["ell"], 0);
}

#[test]
fn fig1_rejects_budget_two() {
    let out = packedit(&["solve", "--problem", "triangle-del", "--input", &fig1(), "--packing", &fig1_packing(), "--k", "2"]);
    assert_eq!(code(&out), 1);
    assert!(out.stdout.is_empty());
}

#[test]
fn verify_names_the_surviving_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let edits = dir.path().join("edits.txt");
    std::fs::write(&edits, "del 0 1\n").unwrap();
    let out = packedit(&["verify", "--problem", "triangle-del", "--input", &fig1(), "--edits", edits.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("surviving triangle 0 2 6"));
}

#[test]
fn optimize_starts_at_the_bound() {
    let out = packedit(&["solve", "--problem", "triangle-del", "--input", &fig1(), "--packing", &fig1_packing(), "--optimize"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("optimum 3"));
}

#[test]
fn engines_agree_on_fig1() {
    for engine in ["above-packing", "plain", "oracle"] {
        let yes = packedit(&["solve", "--problem", "triangle-del", "--input", &fig1(), "--k", "3", "--engine", engine]);
        let no = packedit(&["solve", "--problem", "triangle-del", "--input", &fig1(), "--k", "2", "--engine", engine]);
        assert_eq!((code(&yes), code(&no)), (0, 1), "{engine}");
    }
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(code(&packedit(&["solve", "--problem", "nope"])), 2);
    assert_eq!(code(&packedit(&["solve", "--problem", "fast", "--input", "/no/such/file", "--k", "1"])), 3);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.packing");
    std::fs::write(&bad, "0 1 2\n1 3 4\n").unwrap();
    let out = packedit(&["solve", "--problem", "triangle-del", "--input", &fig1(), "--packing", bad.to_str().unwrap(), "--k", "3"]);
    assert_eq!(code(&out), 3);
    let big = dir.path().join("big.graph");
    std::fs::write(&big, "graph 12 0\n").unwrap();
    let out = packedit(&["oracle", "--problem", "cluster-edit", "--input", big.to_str().unwrap()]);
    assert_eq!(code(&out), 4);
}

#[test]
fn generated_instances_round_trip_through_solve() {
    let dir = tempfile::tempdir().unwrap();
    let tour = dir.path().join("t.txt");
    let out = packedit(&["gen", "random", "--kind", "tournament", "--n", "6", "--seed", "5", "--output", tour.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let oracle = packedit(&["oracle", "--problem", "fast", "--input", tour.to_str().unwrap()]);
    let solve = packedit(&["solve", "--problem", "fast", "--input", tour.to_str().unwrap(), "--auto-pack", "--t", "2", "--optimize"]);
    assert_eq!(code(&solve), 0);
    let opt = String::from_utf8_lossy(&oracle.stdout).trim().to_string();
    assert!(String::from_utf8_lossy(&solve.stderr).contains(&opt));

    let graph = dir.path().join("c.graph");
    let packing = dir.path().join("c.packing");
    let out = packedit(&[
        "gen", "planted", "--sizes", "3,3,2", "--flips", "3", "--seed", "2", "--output", graph.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let out = packedit(&["pack", "--problem", "cluster-edit", "--input", graph.to_str().unwrap(), "--t", "1", "--emit-packing", packing.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let oracle = packedit(&["oracle", "--problem", "cluster-edit", "--input", graph.to_str().unwrap()]);
    let solve = packedit(&["solve", "--problem", "cluster-edit", "--input", graph.to_str().unwrap(), "--packing", packing.to_str().unwrap(), "--optimize"]);
    assert_eq!(code(&solve), 0);
    let opt = String::from_utf8_lossy(&oracle.stdout).trim().to_string();
    assert!(String::from_utf8_lossy(&solve.stderr).contains(&opt));
}

#[test]
fn cons1_output_carries_its_budget() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("f.cnf");
    std::fs::write(&cnf, "p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n").unwrap();
    let graph = dir.path().join("g.graph");
    let packing = dir.path().join("g.packing");
    let out = packedit(&[
        "gen", "cons1", "--cnf", cnf.to_str().unwrap(), "--output", graph.to_str().unwrap(),
        "--emit-packing", packing.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&graph).unwrap();
    assert!(text.starts_with("# k = 9\n"));
    let solve = packedit(&[
        "solve", "--problem", "triangle-del", "--input", graph.to_str().unwrap(), "--packing",
        packing.to_str().unwrap(), "--k", "9", "--engine", "plain",
    ]);
    assert_eq!(code(&solve), 0);
}

#[test]
fn reduce_settles_fig1() {
    let dir = tempfile::tempdir().unwrap();
    let reduced = dir.path().join("r.graph");
    let edits = dir.path().join("r.edits");
    let out = packedit(&[
        "reduce", "--problem", "triangle-del", "--input", &fig1(), "--packing", &fig1_packing(), "--k", "3",
        "--emit-instance", reduced.to_str().unwrap(), "--emit-edits", edits.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(std::fs::read_to_string(&reduced).unwrap().starts_with("# k = 0\n"));
    assert_eq!(std::fs::read_to_string(&edits).unwrap().lines().count(), 3);
    let out = packedit(&["reduce", "--problem", "triangle-del", "--input", &fig1(), "--packing", &fig1_packing(), "--k", "2"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn repeated_runs_give_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.graph");
    packedit(&["gen", "random", "--n", "9", "--p", "0.5", "--seed", "11", "--output", graph.to_str().unwrap()]);
    let run = |tag: &str| {
        let stats = dir.path().join(format!("{tag}.json"));
        let out = packedit(&[
            "solve", "--problem", "cluster-edit", "--input", graph.to_str().unwrap(), "--auto-pack", "--t", "2",
            "--optimize", "--stats", stats.to_str().unwrap(),
        ]);
        let mut json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&stats).unwrap()).unwrap();
        json.as_object_mut().unwrap().remove("wall_time_s");
        (out.stdout, json)
    };
    assert_eq!(run("a"), run("b"));
}
