use std::process::{Command, Output};

use c2core::cli::{C2Output, ReduceOutput};
use c2core::reduction::ReductionTree;

fn c2tool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_c2tool")).args(args).output().expect("c2tool runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn k5_four_valent_residue() {
    let o = c2tool(&["c2", "--gen", "zigzag:3:completed", "--q", "7", "--method", "four-valent"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("q = 7: c2 = 6"), "{}", stdout(&o));
}

#[test]
fn k4_bruteforce_residue() {
    let o = c2tool(&["c2", "--gen", "zigzag:3", "--q", "5", "--method", "bruteforce", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: C2Output = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((r.residues[0].q, r.residues[0].c2), (5, 4));
}

#[test]
fn triangle_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("triangle.json");
    std::fs::write(&path, r#"{"vertices":3,"edges":[[0,1],[1,2],[0,2]]}"#).unwrap();
    let o = c2tool(&["c2", "--graph", path.to_str().unwrap(), "--q", "3", "--method", "bruteforce"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("q = 3: c2 = 1"));
}

#[test]
fn json_reports_round_trip_byte_identical() {
    for args in [
        vec!["c2", "--gen", "k:5", "--q", "2,3,5,7", "--method", "slr", "--json"],
        vec!["c2", "--gen", "zigzag:4", "--q", "2,3", "--method", "denominator", "--json"],
        vec!["c2", "--gen", "zigzag:4:completed", "--q", "2", "--method", "four-valent", "--json", "--threads", "2"],
    ] {
        let o = c2tool(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let text = stdout(&o);
        let back: C2Output = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&back).unwrap() + "\n", text);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(c2tool(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(c2tool(&["c2", "--gen", "k:4", "--q", "3", "--method", "four-valent"]).status.code(), Some(2));
    assert_eq!(c2tool(&["c2", "--gen", "k:4", "--q", "6"]).status.code(), Some(2));
    assert_eq!(c2tool(&["c2", "--gen", "cube:3"]).status.code(), Some(2));
    assert_eq!(c2tool(&["c2"]).status.code(), Some(2));
    assert_eq!(c2tool(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(c2tool(&["reduce", "--gen", "k:5"]).status.code(), Some(2));
}

#[test]
fn reduce_writes_a_replayable_trace() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k5.json");
    let o = c2tool(&["reduce", "--gen", "zigzag:3:completed", "--trace", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let out: ReduceOutput = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&out).unwrap() + "\n", text);
    let ReduceOutput::Complete { trees, .. } = out else {
        panic!("K5 should reduce")
    };
    assert_eq!(trees.len(), 5);
    let total: i128 = trees.iter().map(|t| t.trace.value).sum();
    assert_eq!(total, 15);
    for t in &trees {
        ReductionTree::from_trace(&t.trace).unwrap().replay().unwrap();
    }
}

#[test]
fn irreducible_target_reports_node() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("stuck.json");
    let o = c2tool(&["reduce", "--target", "1*a1^3 + 1*a2^3 + 1*a3^3", "--trace", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out: ReduceOutput = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(matches!(out, ReduceOutput::Failed { .. }));
}

#[test]
fn missing_trace_directory_is_an_error() {
    let o = c2tool(&["reduce", "--gen", "k:5", "--trace", "/nonexistent/dir/t.json"]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn verify_suite_passes() {
    let o = c2tool(&["verify", "theorem3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().filter(|l| l.contains("PASS")).count() >= 2);
}

/// Frozen report layouts. Residues are -1 for K4 and zigzag 4 and -15 for K5.
#[test]
fn golden_reports() {
    for (file, args) in [
        ("k4_denominator.json", vec!["--gen", "zigzag:3", "--q", "2,3,5", "--method", "denominator"]),
        ("k5_slr.json", vec!["--gen", "k:5", "--q", "2,3", "--method", "slr"]),
        ("zigzag4_three_valent.json", vec!["--gen", "zigzag:4", "--q", "2,3", "--method", "three-valent"]),
    ] {
        let mut full = vec!["c2", "--json"];
        full.extend(args);
        let want = std::fs::read_to_string(format!("{}/tests/golden/{file}", env!("CARGO_MANIFEST_DIR"))).unwrap();
        assert_eq!(stdout(&c2tool(&full)), want, "{file}");
    }
}
