use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn ecn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecn"))
        .args(args)
        .env_remove("ECN_TABLE_CACHE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = ecn(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn eval_examples() {
    let v = json(&["eval", "--ruleset", "ECN(7_{1,2},5)", "--pos", "0,4,4,1,3,4,4"]);
    assert_eq!(v["outcome"], "P");
    assert_eq!(v["method"], serde_json::json!(["ECN7125"]));
    assert!(v["witness"].is_string());
    let v = json(&["eval", "--ruleset", "ECN(4_{1},2)", "--pos", "0,0,0,0"]);
    assert_eq!(v["outcome"], "P");
    let human = stdout(&ecn(&["eval", "-r", "ECN(7_{1,2},5)", "-p", " 0, 4,4,1,3,4,4 "]));
    assert!(human.starts_with("P  method=ECN7125"), "{human}");
}

#[test]
fn classify_examples() {
    let v = json(&["classify", "--ruleset", "ECN(8_{1,2,3,4},2)"]);
    assert_eq!(v["resolution"]["MooreEquivalent"], serde_json::json!({"m": 8, "k": 2}));
    let human = stdout(&ecn(&["classify", "-r", "ECN(8_{1,2,3,4},2)"]));
    assert_eq!(human.trim(), "ECN(8_{1,2,3,4},2): MooreEquivalent(8,2)");
    let all = json(&["classify", "--all"]);
    assert_eq!(all.as_array().unwrap().len(), 238);
}

#[test]
fn eval_and_best_agree() {
    for pos in ["1,2,3,0,1,2", "1,1,0,1,1,0", "3,0,2,2,1,0", "0,0,0,0,0,0"] {
        let e = json(&["eval", "-r", "ECN(6_{1,2},3)", "-p", pos]);
        let b = json(&["best", "-r", "ECN(6_{1,2},3)", "-p", pos]);
        assert_eq!(e["outcome"], b["outcome"], "{pos}");
        assert_eq!(b.get("move").is_some(), e["outcome"] == "N", "{pos}");
        if let Some(next) = b["position"].as_str() {
            assert_eq!(json(&["eval", "-r", "ECN(6_{1,2},3)", "-p", next])["outcome"], "P");
        }
    }
    assert_eq!(stdout(&ecn(&["best", "-r", "ECN(4_{1},2)", "-p", "1,0,1,0"])).trim(), "position is P");
}

#[test]
fn moves_and_grundy() {
    let v = json(&["moves", "-r", "ECN(4_{1},2)", "-p", "1,1,0,0"]);
    assert_eq!(v["total"], 3);
    assert_eq!(v["moves"][0]["result"], "0,0,0,0");
    let g = json(&["grundy", "-r", "NIM(3)", "-p", "1,2,4"]);
    assert_eq!(g, 7);
}

#[test]
fn exit_codes() {
    let o = ecn(&["eval", "-r", "ECN(4_{1},2", "-p", "0,0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(ecn(&["eval", "-r", "ECN(4_{1},2)", "-p", "0,0,0"]).status.code(), Some(2));
    assert_eq!(ecn(&["frobnicate"]).status.code(), Some(2));

    let o = ecn(&["--budget", "100", "eval", "-r", "ECN(6_{1},2)", "-p", "9,9,9,9,9,9"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget exceeded"));

    let o = ecn(&["verify", "-r", "ECN(6_{1,2},3)", "--predicate", "CN63", "-b", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
    let o = ecn(&["verify", "-r", "ECN(6_{1,2},3)", "-b", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_exports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = ecn(&["verify", "-r", "ECN(7_{2},4)", "-b", "1", "--format", "csv", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("ruleset,check,coverage"));
    assert!(csv.contains("reduced"));

    let v = json(&["verify", "-r", "ECN(6_{1,2},3)", "-b", "2"]);
    assert_eq!(v[0]["status"], "PASS");
    assert_eq!(v[0]["positions_checked"], 729);
}

#[test]
fn verify_all_small() {
    let v = json(&["verify", "--all", "--bound", "1", "--max-m", "5"]);
    let rows = v.as_array().unwrap();
    assert!(rows.iter().all(|r| r["status"] == "PASS"));
    assert!(rows.iter().any(|r| r["coverage"] == "generalization"));
}

#[test]
fn table_cache_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let out = dir.path().join("t.ecnt");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ecn"))
            .args(["table", "-r", "ECN(6_{1,2},3)", "-b", "2", "--out", out.to_str().unwrap()])
            .env("ECN_TABLE_CACHE", &cache)
            .output()
            .unwrap()
    };
    assert!(run().status.success());
    let files: Vec<_> = fs::read_dir(&cache).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let name = files[0].file_name().unwrap().to_str().unwrap().to_string();
    assert!(name.contains("-b2-v1"), "{name}");
    let first = fs::read(&out).unwrap();
    let dump = ecn_core::solver::read_dump(&first[..]).unwrap();
    assert_eq!(dump.entries.len(), 729);

    // A cached file is served as is.
    let mtime = fs::metadata(&files[0]).unwrap().modified().unwrap();
    assert!(run().status.success());
    assert_eq!(fs::metadata(&files[0]).unwrap().modified().unwrap(), mtime);
    assert_eq!(fs::read(&out).unwrap(), first);

    // A corrupt cache entry is rebuilt.
    fs::write(&files[0], b"junk").unwrap();
    assert!(run().status.success());
    assert_eq!(fs::read(&files[0]).unwrap(), first);

    let csv = stdout(&ecn(&["table", "-r", "ECN(4_{1},2)", "-b", "1", "--format", "csv"]));
    assert_eq!(csv.lines().count(), 17);
    assert!(csv.starts_with("position,outcome,grundy"));
    assert_eq!(ecn(&["table", "-r", "ECN(4_{1},2)", "-b", "1"]).status.code(), Some(2));
}
