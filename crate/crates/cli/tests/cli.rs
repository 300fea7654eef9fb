use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ingleton"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn lines(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn offenders(o: &Output) -> usize {
    lines(o).iter().filter(|v| v["type"] == "offender").count()
}

#[test]
fn search_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s5.jsonl");
    let o = run(&["search", "--named", "sym:5", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let recs: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0]["report"]["ratio"]["num"], 16);
    assert_eq!(recs[0]["report"]["ratio"]["den"], 15);
    assert_eq!(recs[1]["type"], "summary");

    assert_eq!(code(&run(&["verify", out.to_str().unwrap()])), 0);

    let tampered = text.replacen("\"h13\":", "\"h13\":1", 1);
    let bad = dir.path().join("bad.jsonl");
    std::fs::write(&bad, tampered).unwrap();
    let o = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("terms.h13"));
}

#[test]
fn small_groups_have_no_records() {
    let o = run(&["search", "--perm", "(1,2),(1,2,3)"]);
    assert_eq!(code(&o), 0);
    let v = lines(&o);
    assert_eq!(v.len(), 1);
    assert_eq!(v[0]["group_order"], 6);
    let o = run(&["search", "--named", "alt:5"]);
    assert_eq!((code(&o), offenders(&o)), (0, 0));
}

#[test]
fn matrix_input() {
    // SL(2,3) from two transvections
    let o = run(&["search", "--matrix", "3:1,1,0,1;1,0,1,1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(lines(&o)[0]["group_order"], 24);
}

#[test]
fn usage_and_budget_exit_codes() {
    assert_eq!(code(&run(&["search", "--named", "nope:3"])), 2);
    assert_eq!(code(&run(&["search", "--named", "sym:5", "--no-filter", "bogus"])), 2);
    assert_eq!(code(&run(&["search", "--perm", "(1,2", ])), 2);
    assert_eq!(code(&run(&["verify", "/nonexistent/records.jsonl"])), 2);
    assert_eq!(code(&run(&["search", "--named", "alt:6", "--budget", "0"])), 3);
}

#[test]
fn filters_off_same_records() {
    let a = run(&["search", "--named", "sym:5", "--require", "none"]);
    let b = run(&["search", "--named", "sym:5", "--require", "none", "--no-filter", "all"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn family_reports() {
    let o = run(&["family", "5"]);
    assert_eq!(code(&o), 0);
    let v = &lines(&o)[0];
    assert_eq!((v["ratio"]["num"].as_u64(), v["ratio"]["den"].as_u64()), (Some(32), Some(25)));
    assert_eq!(v["offender"], true);

    let v = &lines(&run(&["family", "4"]))[0];
    assert_eq!(v["group_order"], 192);
    assert_eq!(v["offender"], true);

    assert_eq!(code(&run(&["family", "2"])), 2);
    assert_eq!(code(&run(&["family", "3"])), 2);
    let o = run(&["family", "3", "--allow-small"]);
    assert_eq!(code(&o), 0);
    assert_eq!(lines(&o)[0]["offender"], false);
}

fn shipped() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/example_3xpsl27.jsonl")
}

#[test]
fn shipped_example_verifies() {
    let o = run(&["verify", shipped().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("1 records checked, 0 mismatching"));
}

#[test]
fn fast_catalogue_passes() {
    let o = run(&["catalogue", "fast"]);
    let table = String::from_utf8_lossy(&o.stdout);
    assert_eq!(code(&o), 0, "{table}");
    assert!(!table.contains("FAIL"));
    assert!(table.contains("S5"));
}
