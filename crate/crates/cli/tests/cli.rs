use std::process::{Command, Output};

use hyperred::bounds::BoundsReport;
use hyperred::curves::RosenhainCurve;
use hyperred::forge::FamilyWitness;
use hyperred::sunit::TwoTermSolution;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperred")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(&[args, &["--format", "json"]].concat());
    assert!(out.status.code().unwrap() <= 1, "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["reduce", "--roots", "0,1,2,3,4"]), 0);
    assert_eq!(code(&["reduce", "--roots", "0,1,1"]), 3);
    assert_eq!(code(&["reduce", "--roots", "0,1,1,2,3"]), 3);
    assert_eq!(code(&["reduce", "--roots", "0,1,a,2,3"]), 2);
    assert_eq!(code(&["reduce", "--roots", "0,1,2,3,4", "--primes", "9"]), 2);
    assert_eq!(code(&["reduce"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["bounds", "--field", "quad:9", "--genus", "3"]), 4);
    assert_eq!(code(&["pi-odd", "--field", "abp:3:7", "--x", "10"]), 4);
    assert_eq!(code(&["bounds", "--field", "cubic", "--genus", "3"]), 2);
    assert_eq!(code(&["forge", "tuple", "--genus", "2", "--limit", "4"]), 1);
    assert_eq!(code(&["forge", "tuple", "--genus", "2", "--limit", "10000", "--mode", "literal"]), 2);
    assert_eq!(code(&["enumerate", "--s", "3,5"]), 2);
    assert_eq!(code(&["exceptional", "--s", "2", "--bound", "2", "--from", "5", "--to", "7"]), 1);
}

#[test]
fn reduce_reports_c1_and_c2() {
    let out = String::from_utf8(run(&["reduce", "--roots", "0,1,2,3,4", "--auto"]).stdout).unwrap();
    assert!(out.contains("B_odd = {3}"), "{out}");
    assert!(out.contains("2^18 * 3^4"), "{out}");
    let v = json(&["reduce", "--roots", "0,2,3,4,6", "--primes", "3"]);
    assert_eq!(v["payload"]["verdicts"][0]["potentially_good"], Value::Bool(false));
    let curve: RosenhainCurve = serde_json::from_value(v["payload"]["curve"].clone()).unwrap();
    assert_eq!(curve, RosenhainCurve::from_ints(&[0, 2, 3, 4, 6]).unwrap());
}

#[test]
fn curves_round_trip_exactly() {
    let v = json(&["reduce", "--roots", "0,1,3/2,-7/9,100", "--twist", "-2/3"]);
    assert_eq!(v["schema_version"], "1");
    let roots = v["payload"]["curve"]["roots"].as_array().unwrap();
    assert!(roots.iter().all(Value::is_string));
    let curve: RosenhainCurve = serde_json::from_value(v["payload"]["curve"].clone()).unwrap();
    let text: Vec<String> = curve.roots().iter().map(|r| r.to_string()).collect();
    let again = json(&["reduce", "--roots", &text.join(","), "--twist", &curve.twist().to_string()]);
    assert_eq!(again["payload"], v["payload"]);
}

#[test]
fn payloads_deserialize() {
    let v = json(&["sunit", "--s", "2,3", "--bound", "40"]);
    let sols: Vec<TwoTermSolution> = serde_json::from_value(v["payload"]["solutions"].clone()).unwrap();
    assert_eq!(sols.len(), 21);
    let v = json(&["bounds", "--field", "q", "--genus", "5"]);
    let r: BoundsReport = serde_json::from_value(v["payload"].clone()).unwrap();
    assert_eq!(r.upper_schinzel_exact.value, 11);
    assert_eq!(r.upper_dickson.value, 13);
    let v = json(&["forge", "tuple", "--genus", "2", "--limit", "10000"]);
    let w: FamilyWitness = serde_json::from_value(v["payload"]["witness"].clone()).unwrap();
    assert!(w.verify());
    assert_eq!(v["payload"]["search"]["value"], 5);
    assert_eq!(v["payload"]["witness"]["verdict"], "PASS");
}

#[test]
fn timing_stays_outside_the_payload() {
    let a = json(&["bounds", "--genus", "4"]);
    let b = json(&["bounds", "--genus", "4", "--timing"]);
    assert!(a.get("timing").is_none());
    assert!(b["timing"]["elapsed_ms"].is_number());
    assert_eq!(a["payload"], b["payload"]);
}

#[test]
fn flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("defaults.toml");
    std::fs::write(&path, "s = \"2\"\nbound = 3\ngenus = 3\n").unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["sunit", "--config", p]);
    assert_eq!(v["payload"]["count"], 3);
    let v = json(&["sunit", "--config", p, "--s", "2,3", "--bound", "40"]);
    assert_eq!(v["payload"]["count"], 21);
    let v = json(&["bounds", "--config", p]);
    assert_eq!(v["payload"]["g"], 3);
    std::fs::write(&path, "nonsense = 1\n").unwrap();
    assert_eq!(code(&["sunit", "--config", p]), 2);
}
