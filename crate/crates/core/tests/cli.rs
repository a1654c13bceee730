use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn linkgroup(args: &[&str]) -> Output {
    linkgroup_with(args, None)
}

fn linkgroup_with(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_linkgroup"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("LINKGROUP_THREADS", t);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn derive_reproduces_printed_text() {
    for stem in ["u1466", "u1563", "u2125", "u2165"] {
        let o = linkgroup(&["derive", corpus(&format!("{stem}.pd.json")).to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o), fs::read_to_string(corpus(&format!("{stem}.pres"))).unwrap());
    }
}

#[test]
fn derive_unknot_and_gap_dialect() {
    let dir = TempDir::new().unwrap();
    let unknot = write(&dir, "unknot.json", r#"{"name": "unknot", "components": [["a"]], "crossings": []}"#);
    let o = linkgroup(&["derive", &unknot]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("gens: a"));

    let o = linkgroup(&["derive", "--dialect", "gap", corpus("u1466.pd.json").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("FreeGroup"), "{text}");
}

#[test]
fn homology_and_simplify() {
    let dir = TempDir::new().unwrap();
    let z6 = write(&dir, "z6.pres", "gens: a\nrels: a^6\n");
    let v: Value = serde_json::from_str(&stdout(&linkgroup(&["homology", &z6]))).unwrap();
    assert_eq!(v["homology"], serde_json::json!([6]));
    assert_eq!(v["perfect"], false);

    let o = linkgroup(&["simplify", "--aliases-only", corpus("u2165.pd.json").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().next().unwrap().split(',').count() == 9);
}

#[test]
fn profile_respects_k() {
    let o = linkgroup(&["profile", "--K", "5", corpus("u1466.pres").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["config"]["k"], 5);
    let keys: Vec<&String> = v["low_index"].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["2", "3", "4", "5"]);
    assert_eq!(v["low_index"]["5"]["classes"], 1);
}

#[test]
fn profile_matches_committed_report() {
    let o = linkgroup(&["profile", corpus("u2165.pres").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), fs::read_to_string(corpus("report/u2165.profile.json")).unwrap());
}

#[test]
fn distinguish_exit_codes_and_witness_replay() {
    let dir = TempDir::new().unwrap();
    let z2 = write(&dir, "z2.pres", "gens: a\nrels: a^2\n");
    let z3 = write(&dir, "z3.pres", "gens: a\nrels: a^3\n");
    let verdict = dir.path().join("v.json");
    let verdict = verdict.to_str().unwrap();

    let o = linkgroup(&["distinguish", &z2, &z2]);
    assert_eq!(code(&o), 10);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["outcome"], "Inconclusive");

    let o = linkgroup(&["distinguish", "--K", "3", &z2, &z3, "--out", verdict]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&fs::read_to_string(verdict).unwrap()).unwrap();
    assert_eq!(v["outcome"], "Distinguished");
    assert_eq!(v["witness"]["recipe"]["kind"], "homology");

    let o = linkgroup(&["verify-witness", verdict, &z2, &z3]);
    assert_eq!(code(&o), 0);
    let check: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(check["passed"], true);

    let o = linkgroup(&["verify-witness", verdict, &z3, &z2]);
    assert_eq!(code(&o), 1);
}

#[test]
fn budget_exhaustion_exits_2() {
    let o = linkgroup(&["profile", "--budget", "1", corpus("u1466.pres").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["hom_counts"]["A5"]["budget_exceeded"], true);

    let p = corpus("u1466.pres");
    let q = corpus("u1563.pres");
    let o = linkgroup(&["distinguish", "--budget", "1", p.to_str().unwrap(), q.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!v["skipped"].as_array().unwrap().is_empty());
}

#[test]
fn gem_check_files() {
    let dir = TempDir::new().unwrap();
    let dipole = write(
        &dir,
        "dipole.json",
        r#"{"vertices": 2, "matchings": [[[0,1]], [[0,1]], [[0,1]], [[0,1]]]}"#,
    );
    let o = linkgroup(&["gem-check", &dipole]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["is_gem"], true);

    let bad = write(&dir, "bad.json", r#"{"vertices": 2, "matchings": [[[0,1]], [[0,1]], [[0,1]]]}"#);
    assert_eq!(code(&linkgroup(&["gem-check", &bad])), 1);
}

#[test]
fn bad_input_exits_1() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.pres", "gens: a\nrels: a*b\n");
    assert_eq!(code(&linkgroup(&["homology", &bad])), 1);
    let broken = write(&dir, "broken.json", r#"{"components": [["a", "b"]], "crossings": []}"#);
    assert_eq!(code(&linkgroup(&["derive", &broken])), 1);
    assert_eq!(code(&linkgroup(&["homology", "/nonexistent/file"])), 1);
    assert_eq!(code(&linkgroup(&["profile", "--K", "1", &bad])), 1);
    assert_eq!(code(&linkgroup(&["no-such-command"])), 1);
    assert_eq!(code(&linkgroup(&["--help"])), 0);
    assert_eq!(code(&linkgroup(&["--version"])), 0);
}

#[test]
fn thread_count_does_not_change_output() {
    let input = corpus("u2125.pres");
    let input = input.to_str().unwrap();
    let one = linkgroup_with(&["profile", input], Some("1"));
    let eight = linkgroup_with(&["profile", input], Some("8"));
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, eight.stdout);
    assert_eq!(code(&linkgroup_with(&["profile", input], Some("zero"))), 1);
}

#[test]
fn corpus_listing() {
    let o = linkgroup(&["corpus"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 4);
    assert!(entries.iter().all(|e| e["generators"] == 18 && e["relators"] == 20));
}
