//! End-to-end tests of the `diffembed` binary: golden reports, schema,
//! CSV output and exit codes.
//!
//! Golden reports live in `tests/golden/`. Regenerate them with
//! `UPDATE_GOLDEN=1 cargo test --test cli`.

use diffembed::report::validate_report;
use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_diffembed");

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli").join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(dir)
        .env("DIFFEMBED_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn gen(dir: &Path, spec: &str, out: &str) {
    let o = run(dir, &["gen", "--spec", spec, "--out", out]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

fn report(o: &Output) -> Value {
    let v: Value = serde_json::from_slice(&o.stdout).expect("stdout is a JSON report");
    validate_report(&v).unwrap();
    v
}

fn strip_timing(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim_start().starts_with("\"timing_ms\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn check_golden(name: &str, o: &Output) {
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    report(o);
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    let got = String::from_utf8(o.stdout.clone()).unwrap();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(strip_timing(&got), strip_timing(&want), "report drifted from {}", path.display());
}

fn residues5(dir: &Path, hi: i64) {
    let spec = format!(r#"{{"window": [1, {hi}], "kind": "residues", "modulus": 5, "classes": [0, 1]}}"#);
    gen(dir, &spec, "r5.txt");
}

#[test]
fn golden_cover_report() {
    let dir = scratch("cover");
    residues5(&dir, 100_000);
    let o = run(&dir, &["cover", "--set", "r5.txt", "--eps", "0", "--x=-500..500", "--n", "1000", "--mandated", "0"]);
    check_golden("cover", &o);
    let v = report(&o);
    assert_eq!(v["results"]["shifts"], serde_json::json!([0, 2]));
    assert_eq!(v["results"]["k_bound"], 2);
    assert_eq!(v["results"]["covered"], true);
}

#[test]
fn golden_delta_report() {
    let dir = scratch("delta");
    residues5(&dir, 5000);
    let o = run(&dir, &["delta", "--set", "r5.txt", "--eps", "1/4", "--n", "500", "--trange=-100..100"]);
    check_golden("delta", &o);
    let v = report(&o);
    let members: Vec<i64> = serde_json::from_value(v["results"]["members"].clone()).unwrap();
    assert_eq!(members, (-100..=100).filter(|t| t % 5 == 0).collect::<Vec<_>>());
}

#[test]
fn golden_difference_cover_report() {
    let dir = scratch("difference_cover");
    gen(&dir, r#"{"window": [0, 400000], "kind": "residues", "modulus": 3, "classes": [0]}"#, "r3.txt");
    let o = run(
        &dir,
        &["pipeline", "--a", "r3.txt", "--b", "r3.txt", "--N", "198000", "--nu", "3000", "--n", "2000", "--jin"],
    );
    check_golden("pipeline_difference_cover", &o);
    let v = report(&o);
    let shifts = v["results"]["shifts"].as_array().unwrap();
    assert!(shifts.len() <= 9);
    assert_eq!(v["results"]["target_covered"], true);
}

#[test]
fn reports_repeat_exactly() {
    let dir = scratch("repeat");
    residues5(&dir, 5000);
    let args = ["analyze", "--set", "r5.txt", "--n", "100", "--n", "1000"];
    let (a, b) = (run(&dir, &args), run(&dir, &args));
    assert_eq!(strip_timing(&String::from_utf8_lossy(&a.stdout)), strip_timing(&String::from_utf8_lossy(&b.stdout)));
    let v = report(&a);
    assert_eq!(v["results"]["banach"][1]["upper_banach"]["value"], "2/5");
    assert_eq!(v["results"]["schnirelmann"]["value"], "1/4");
}

#[test]
fn gen_writes_three_files_for_a_triple() {
    let dir = scratch("triple");
    gen(&dir, r#"{"window": [0, 20000], "kind": "thick_triple", "scale": 10}"#, "t.txt");
    for label in ["a", "b", "c"] {
        assert!(dir.join(format!("t-{label}.txt")).exists());
    }
}

#[test]
fn chain_pipeline_places_one_pattern_in_every_set() {
    let dir = scratch("chain");
    let mut names = Vec::new();
    for seed in 1..=3 {
        let spec = format!(r#"{{"window": [0, 200000], "seed": {seed}, "kind": "bernoulli", "p": "1/2"}}"#);
        let name = format!("b{seed}.txt");
        gen(&dir, &spec, &name);
        names.push(name);
    }
    let mut args = vec!["pipeline", "--N", "100000", "--n", "12", "--chain"];
    args.extend(names.iter().map(String::as_str));
    let o = run(&dir, &args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = report(&o);
    let pattern: Vec<i64> = serde_json::from_value(v["results"]["pattern"].clone()).unwrap();
    let shifts: Vec<i64> = serde_json::from_value(v["results"]["shifts"].clone()).unwrap();
    assert_eq!(shifts.len(), 3);
    for (name, s) in names.iter().zip(&shifts) {
        let set = diffembed::setfile::read(&dir.join(name), None).unwrap();
        assert!(pattern.iter().all(|e| set.contains(s + e)), "pattern escapes {name}");
    }
}

#[test]
fn csv_goes_to_stdout_and_report_to_out() {
    let dir = scratch("csv");
    residues5(&dir, 2000);
    let o = run(
        &dir,
        &["delta", "--set", "r5.txt", "--eps", "1/4", "--n", "200", "--trange=-2..2", "--csv", "--out", "rep.json"],
    );
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text, "# per_t\nt,estimate,member\n-2,0,false\n-1,1/5,false\n0,2/5,true\n1,1/5,false\n2,0,false\n");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("rep.json")).unwrap()).unwrap();
    validate_report(&v).unwrap();
}

#[test]
fn embed_and_bohr_commands() {
    let dir = scratch("embed");
    residues5(&dir, 2000);
    gen(&dir, r#"{"window": [0, 100], "kind": "residues", "modulus": 10, "classes": [0]}"#, "x.txt");
    let v = report(&run(&dir, &["embed", "--x", "x.txt", "--y", "r5.txt", "--m", "30", "--dense", "--n", "200"]));
    assert_eq!(v["results"]["embeddable"]["ok"], true);
    let o = run(&dir, &["bohr", "--d", "r5.txt", "--freqs", "1/5", "--eps", "1/10", "--shift", "1"]);
    let v = report(&o);
    assert_eq!(v["results"]["contained"]["ok"], true);
    let v = report(&run(&dir, &["bohr", "--d", "r5.txt", "--search", "--Lmin", "50"]));
    assert!(v["results"]["witness"].is_object());
}

#[test]
fn extract_command_has_no_violations() {
    let dir = scratch("extract");
    gen(&dir, r#"{"window": [1, 5000], "seed": 2, "kind": "bernoulli", "p": "1/2"}"#, "b.txt");
    let o = run(&dir, &["extract", "--set", "b.txt", "--n", "10", "--slack", "1/50"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(report(&o)["violations"].as_array().unwrap().is_empty());
}

#[test]
fn selftest_subset_passes() {
    let dir = scratch("selftest");
    let o = run(&dir, &["selftest", "--trials", "100", "--seed", "1", "--checks", "1", "2", "4", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(report(&o)["seed"], 1);
}

#[test]
fn exit_code_two_for_bad_input() {
    let dir = scratch("bad");
    std::fs::write(dir.join("junk.txt"), "1\nnot-a-number\n").unwrap();
    assert_eq!(run(&dir, &["analyze", "--set", "junk.txt"]).status.code(), Some(2));
    assert_eq!(run(&dir, &["analyze", "--set", "missing.txt"]).status.code(), Some(2));
    assert_eq!(run(&dir, &["nonsense"]).status.code(), Some(2));
    residues5(&dir, 1000);
    assert_eq!(run(&dir, &["delta", "--set", "r5.txt", "--eps", "x/y", "--n", "10", "--trange", "0..1"]).status.code(), Some(2));
    let o = Command::new(BIN).args(["analyze", "--set", "r5.txt"]).current_dir(&dir).env("DIFFEMBED_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_code_four_for_infeasible_parameters() {
    let dir = scratch("infeasible");
    let o = run(&dir, &["gen", "--spec", r#"{"window": [0, 100], "kind": "thick_triple", "scale": 10}"#, "--out", "t.txt"]);
    assert_eq!(o.status.code(), Some(4));
    residues5(&dir, 1000);
    std::fs::write(dir.join("empty.txt"), format!("lo=1\n{}\n", "0".repeat(1000))).unwrap();
    let o = run(&dir, &["pipeline", "--a", "r5.txt", "--b", "empty.txt", "--N", "1000", "--nu", "100", "--n", "50"]);
    assert_eq!(o.status.code(), Some(4), "{}", String::from_utf8_lossy(&o.stderr));
}
