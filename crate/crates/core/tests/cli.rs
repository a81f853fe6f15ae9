mod common;

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;

use common::report_errors;
use liking::cli::{parse_design, parse_digraph, run, serialize_digraph};
use liking::design::fixtures;
use liking::digraph::{complete_digraph, directed_cycle, fancy_wheel};
use liking::liking::LikingParams;
use liking::search::{enumerate_liking, Checkpoint, SearchConfig, SearchMode, SearchSpec};
use serde_json::Value;

fn bin(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_liking")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["liking"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--format", "json"]);
    let out = run(argv);
    let value: Value = serde_json::from_str(&out.rendered).unwrap();
    let errors = report_errors(&value);
    assert!(errors.is_empty(), "{args:?}: {errors:#?}");
    (out.exit_code, value)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.dg", &serialize_digraph(&complete_digraph(4).unwrap()));
    let c4 = write(dir.path(), "c4.dg", &serialize_digraph(&directed_cycle(4).unwrap()));
    let bad = write(dir.path(), "bad.dg", "digraph 3\n0 0\n");

    let (code, out) = bin(&["check", "--digraph", &k4, "--t", "3", "--lambda", "1", "--two-way"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("verdict: ok"));
    let (code, out) = bin(&["check", "--digraph", &c4, "--t", "2", "--lambda", "1"]);
    assert_eq!(code, 1);
    assert!(out.contains("witness"), "{out}");
    let (code, out) = bin(&["check", "--digraph", &bad, "--t", "2", "--lambda", "1"]);
    assert_eq!(code, 2);
    assert!(out.contains("line 2") && out.contains("loop"), "{out}");
    assert_eq!(bin(&["check", "--digraph", &k4]).0, 2, "missing --t/--lambda");
    assert_eq!(bin(&["check", "--digraph", &k4, "--eulerian", "--bounds"]).0, 2, "conflicting flags");
    assert_eq!(bin(&["nonsense"]).0, 2);
    assert_eq!(bin(&["--help"]).0, 0);
    assert_eq!(bin(&["check", "--digraph", "/no/such/file", "--t", "2", "--lambda", "1"]).0, 2);
}

#[test]
fn check_variants() {
    let dir = tempfile::tempdir().unwrap();
    let wheel = write(dir.path(), "w.dg", &serialize_digraph(&fancy_wheel(&[2, 3]).unwrap()));
    let c3 = write(dir.path(), "c3.dg", &serialize_digraph(&directed_cycle(3).unwrap()));

    let (code, v) = json(&["check", "--digraph", &wheel, "--classify-21"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["classification"]["class"], "fancy_wheel");
    let (code, v) = json(&["check", "--digraph", &c3, "--classify-21"]);
    assert_eq!(code, 1);
    assert!(!v["witness"].is_null());

    let (code, v) = json(&["check", "--digraph", &c3, "--eulerian"]);
    assert_eq!((code, v["verdict"].as_str()), (0, Some("ok")));
    assert_eq!(json(&["check", "--digraph", &wheel, "--eulerian"]).0, 0);
    let star = write(dir.path(), "star.dg", "digraph 3\n0 1\n0 2\n");
    let (code, v) = json(&["check", "--digraph", &star, "--eulerian"]);
    assert_eq!(code, 1);
    assert_eq!(v["witness"]["vertex"], 0);

    let (code, v) = json(&["check", "--digraph", &c3, "--t", "1", "--lambda", "1", "--two-way"]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = json(&["check", "--digraph", &c3, "--t", "2", "--lambda", "1", "--all-violations"]);
    assert_eq!(code, 1);
    assert_eq!(v["payload"]["violations"].as_array().unwrap().len(), 3);

    let (code, _) = json(&["check", "--digraph", &wheel, "--t", "2", "--lambda", "1", "--bounds"]);
    assert_eq!(code, 0);
    let (code, _) = json(&["check", "--digraph", &c3, "--t", "2", "--lambda", "1", "--bounds"]);
    assert_eq!(code, 1);
}

#[test]
fn design_construct_convert_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let des = dir.path().join("fano.des");
    let dg = dir.path().join("fano.dg");
    let (code, v) = json(&["design", "--difference-set", "7:1,2,4", "--verify", "--out", des.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["params"]["lambda"], 1);
    assert_eq!(v["payload"]["symmetric"], true);
    assert_eq!(parse_design(&std::fs::read_to_string(&des).unwrap()).unwrap(), fixtures::fano());

    let (code, v) = json(&["construct", "--design", des.to_str().unwrap(), "--out", dg.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["params"]["k"], 3);
    let (d, warnings) = parse_digraph(&std::fs::read_to_string(&dg).unwrap()).unwrap();
    assert!(warnings.is_empty());
    assert_eq!(d.is_diregular(), Some(3));

    let (code, v) = json(&["check", "--digraph", dg.to_str().unwrap(), "--t", "2", "--lambda", "1", "--two-way"]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = json(&["convert", "--digraph", dg.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["params"]["v"], 7);
    assert!(v["artifact"].as_str().unwrap().starts_with("design 7 7\n"));

    let (code, v) = json(&["design", "--difference-set", "7:1,2,4", "--complement", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["params"]["k"], 4);

    let (code, v) = json(&["construct", "--difference-set", "7:1,2,4", "--all-sdrs"]);
    assert_eq!(code, 0);
    let count = v["payload"]["count"].as_u64().unwrap();
    assert!(count > 0 && v["payload"]["constructions"].as_array().unwrap().len() as u64 == count);

    let (code, text) = bin(&["construct", "--difference-set", "7:1,2,4", "--dot"]);
    assert_eq!(code, 0);
    assert!(text.contains("digraph") && text.contains("->"), "{text}");
}

#[test]
fn design_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.des", "design 3 1\n0 5\n");
    let (code, v) = json(&["design", "--file", &bad]);
    assert_eq!(code, 2);
    assert!(v["summary"][0].as_str().unwrap().contains("variety 5 out of range"));

    // pairs of {0,1,2,3}: a BIBD but not symmetric
    let pairs = write(dir.path(), "pairs.des", "design 4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    assert_eq!(json(&["design", "--file", &pairs, "--verify"]).0, 0);
    assert_eq!(json(&["construct", "--design", &pairs]).0, 2);
    let broken = write(dir.path(), "broken.des", "design 4 2\n0 1\n2 3\n");
    let (code, v) = json(&["design", "--file", &broken, "--verify"]);
    assert_eq!(code, 1);
    assert!(!v["witness"].is_null());
    // (5,4,3): order below 2λ
    let k5 = write(dir.path(), "k5.des", "design 5 5\n1 2 3 4\n0 2 3 4\n0 1 3 4\n0 1 2 4\n0 1 2 3\n");
    let (code, v) = json(&["construct", "--design", &k5]);
    assert_eq!(code, 2);
    assert!(v["summary"][0].as_str().unwrap().contains("2*lambda"));
}

#[test]
fn sdr_command() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.fam", "family 3 3\n0 1\n1 2\n0\n");
    let bad = write(dir.path(), "bad.fam", "# Hall fails on all three\nfamily 2 3\n0 1\n1\n0\n");
    let (code, v) = json(&["sdr", "--family", &good]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["representatives"], serde_json::json!([1, 2, 0]));
    let (code, v) = json(&["sdr", "--family", &bad]);
    assert_eq!(code, 1);
    assert_eq!(v["witness"]["hall_violator"], serde_json::json!([0, 1, 2]));
    assert_eq!(v["witness"]["union_size"], 2);
}

#[test]
fn search_and_audit_commands() {
    let (code, v) = json(&["search", "--n", "4", "--t", "3", "--lambda", "1", "--two-way", "--dedupe"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["found"].as_array().unwrap().len(), 1);
    assert_eq!(v["payload"]["found"][0]["arcs"].as_array().unwrap().len(), 12);

    let (code, v) = json(&["search", "--n", "7", "--t", "2", "--lambda", "2", "--budget", "1000"]);
    assert_eq!(code, 1, "budget exhaustion is reported as a failure");
    assert_eq!(v["payload"]["budget_exhausted"], true);

    assert_eq!(json(&["search", "--n", "9", "--t", "2", "--lambda", "1"]).0, 2);
    assert_eq!(json(&["search", "--n", "4", "--t", "0", "--lambda", "1"]).0, 2);

    let (code, v) = json(&["audit", "--n-max", "4", "--params", "2:1,3:1"]);
    assert_eq!(code, 0);
    assert!(!v["payload"]["entries"].as_array().unwrap().is_empty());
    assert_eq!(json(&["audit", "--n-max", "4", "--params", "1:1"]).0, 2);
    assert_eq!(json(&["audit", "--n-max", "8"]).0, 2, "order guard");
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_liking"))
        .args(["search", "--n", "7", "--t", "2", "--lambda", "2"])
        .env("LIKING_BUDGET", "500")
        .env("LIKING_WORKERS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("budget exhausted"));
}

#[test]
fn checkpoint_resume_covers_the_full_search() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("search.ckpt");
    let spec = SearchSpec::new(7, LikingParams::new(2, 1).unwrap(), SearchMode::Liking);
    let full = enumerate_liking(&spec, &SearchConfig::default()).unwrap();
    assert!(full.complete);
    let full: BTreeSet<Vec<u64>> = full.found.iter().map(|d| d.rows()).collect();

    let mut collected = BTreeSet::new();
    let mut cfg = SearchConfig {
        node_budget: 20_000,
        workers: 2,
        checkpoint: Some(ckpt.clone()),
        ..Default::default()
    };
    let mut runs = 0;
    loop {
        let r = enumerate_liking(&spec, &cfg).unwrap();
        collected.extend(r.found.iter().map(|d| d.rows()));
        runs += 1;
        if r.complete {
            break;
        }
        assert!(r.budget_exhausted);
        assert!(ckpt.exists() || r.prefixes_completed == 0);
        cfg.resume = true;
        // widen the budget so every run gets past at least one batch
        cfg.node_budget *= 2;
        assert!(runs < 40, "resume is not making progress");
    }
    assert!(runs > 1, "budget never interrupted the search");
    assert_eq!(collected, full);

    let saved = Checkpoint::load(&ckpt).unwrap();
    assert_eq!(Checkpoint::parse(&saved.to_text()).unwrap(), saved);
}

#[test]
fn duplicate_arcs_warn() {
    let dir = tempfile::tempdir().unwrap();
    let dup = write(dir.path(), "dup.dg", "digraph 2\n0 1\n0 1\n1 0\n");
    let (code, v) = json(&["check", "--digraph", &dup, "--t", "1", "--lambda", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["warnings"][0]["line"], 3);
    assert_eq!(v["payload"]["arcs"], 2);
}
