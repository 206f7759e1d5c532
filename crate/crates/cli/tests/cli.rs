use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn pair(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "pairs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paracr"))
        .args(args)
        .env_remove("PARACR_SEED")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn check_flat_pair() {
    let o = run(&["check", &pair("flat.pair")]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("Flat"));
}

#[test]
fn check_ii_prints_third_invariant() {
    let o = run(&["check", &pair("ii.pair"), "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let text = v["result"].to_string();
    assert!(text.contains("2*r"), "{text}");
    assert!(text.contains("NonflatI3"), "{text}");
}

#[test]
fn classify_iiia() {
    let o = run(&["classify", &pair("iiia.pair")]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("NonflatI2"));
}

#[test]
fn malformed_pair_is_a_parse_error() {
    assert_eq!(code(&run(&["check", &pair("malformed.pair")])), 2);
    assert_eq!(code(&run(&["check", "/nonexistent/x.pair"])), 2);
    assert_eq!(code(&run(&["check", &pair("flat.pair"), "--tol", "-1"])), 2);
}

#[test]
fn nonintegrable_pair_is_inadmissible() {
    let o = run(&["check", &pair("nonintegrable.pair"), "--json"]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["exit_code"], 3);
}

#[test]
fn verify_model_statuses() {
    assert_eq!(code(&run(&["verify-model", "flat"])), 0);
    assert_eq!(code(&run(&["verify-model", "iiia", "--b", "1.5"])), 0);
    assert_eq!(code(&run(&["verify-model", "iiia", "--b", "1.0"])), 4);
    assert_eq!(code(&run(&["verify-model", "iiib", "--eps", "1"])), 1);
}

#[test]
fn mc_flat_and_symmetries() {
    let o = run(&["mc-flat", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["verdict"], "pass");
    assert_eq!(code(&run(&["symmetries", "--model", "iiib", "--b", "3"])), 0);
    let o = run(&["symmetries", "--pair", &pair("ii.pair"), "--solve", "--degree", "1", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["result"]["report"]["kernel_dimension"], 5);
}

#[test]
fn report_embeds_seed() {
    let o = run(&["check", &pair("flat.pair"), "--json", "--seed", "99"]);
    assert_eq!(json(&o)["seed"], 99);
    let o = Command::new(env!("CARGO_BIN_EXE_paracr"))
        .args(["check", &pair("flat.pair"), "--json"])
        .env("PARACR_SEED", "1234")
        .output()
        .unwrap();
    assert_eq!(json(&o)["seed"], 1234);
}

#[test]
fn out_writes_file() {
    let dir = std::env::temp_dir().join(format!("paracr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = run(&["invariants", &pair("flat.pair"), "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "invariants");
    std::fs::remove_dir_all(&dir).ok();
}

fn verdicts(v: &Value) -> Vec<(u64, bool)> {
    v["result"]["criteria"]
        .as_array()
        .expect("criteria array")
        .iter()
        .map(|c| (c["id"].as_u64().unwrap(), c["passed"].as_bool().unwrap()))
        .collect()
}

#[test]
fn suite_default_and_weak_protocol() {
    let o = run(&["suite"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let o = run(&["suite", "--samples", "8", "--tol", "1e-3", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["samples"], 8);
    assert_eq!(v["tolerance"], 1e-3);
}

#[test]
fn suite_verdicts_do_not_depend_on_seed() {
    let a = json(&run(&["suite", "--seed", "7", "--json"]));
    let b = json(&run(&["suite", "--seed", "8", "--json"]));
    assert_eq!(a["seed"], 7);
    assert_eq!(b["seed"], 8);
    assert_eq!(verdicts(&a), verdicts(&b));
    assert_eq!(a["verdict"], b["verdict"]);
}
