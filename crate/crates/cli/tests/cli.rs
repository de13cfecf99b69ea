use std::process::{Command, Output};

use dicrit_cli::json::path_from_json;
use dicrit_core::{FieldTower, PrimeDivisor};
use serde_json::Value;

fn dicrit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dicrit")).args(args).output().expect("binary runs")
}

fn machine(args: &[&str]) -> Value {
    let mut all = vec!["--format", "machine"];
    all.extend_from_slice(args);
    let out = dicrit(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn exit_codes_follow_error_families() {
    let code = |args: &[&str]| dicrit(args).status.code();
    assert_eq!(code(&["dicriticals", "y^2/x^3"]), Some(0));
    assert_eq!(code(&["dicriticals", "x^3 +"]), Some(2));
    assert_eq!(code(&["dicriticals", "x + (y/x)"]), Some(2));
    assert_eq!(code(&["no-such-command"]), Some(2));
    assert_eq!(code(&["--field", "Fp:6", "colength", "x, y"]), Some(3));
    assert_eq!(code(&["colength", "x"]), Some(4));
    assert_eq!(code(&["rees-certificate", "--path", "[]", "x, y, x*y"]), Some(4));
    assert_eq!(code(&["--depth", "1", "ideal-dicriticals", "y^2 - x^9, x^20"]), Some(5));
    assert_eq!(code(&["--nmax", "0", "reduction-check", "x^3, y^2", "x^3, y^2, x^2*y"]), Some(5));
}

#[test]
fn machine_output_has_the_stable_keys() {
    let v = machine(&["dicriticals", "y^2/x^3"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["request", "field", "records", "factorization", "decision", "witness", "diagnostics", "data"] {
        assert!(keys.contains(&k), "missing {k}");
    }
    let rec = &v["records"][0];
    assert_eq!(rec["values"]["x"], 2);
    assert_eq!(rec["values"]["y"], 3);
    assert_eq!(rec["index"], 1);
    assert_eq!(rec["degree"], 1);
    let err = dicrit(&["--format", "machine", "colength", "x"]);
    let doc: Value = serde_json::from_slice(&err.stdout).unwrap();
    assert_eq!(doc["error"]["family"], "input");
}

#[test]
fn text_output_is_a_table() {
    let out = dicrit(&["dicriticals", "y^2/x^3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("  #  path    index  values   degree\n"), "{text}");
    assert!(text.contains("  0  A(0) I  1      x=2 y=3  1\n"), "{text}");
}

#[test]
fn paths_round_trip_through_value_queries() {
    let k = FieldTower::rationals();
    for (cmd, expr) in [("dicriticals", "y^2/x^3"), ("ideal-dicriticals", "x^3, x^2*y, y^7"), ("dicriticals", "(y^2 - 2*x^2)/x^3")] {
        let v = machine(&[cmd, expr]);
        for rec in v["records"].as_array().unwrap() {
            let path = path_from_json(&k, &rec["path"]).unwrap();
            let again = serde_json::to_value(dicrit_cli::json::path_to_json(&path)).unwrap();
            assert_eq!(again, rec["path"]);
            let vals = PrimeDivisor::new(path).coordinate_values().unwrap();
            assert_eq!(vals[0] as i64, rec["values"]["x"].as_i64().unwrap());
            assert_eq!(vals[1] as i64, rec["values"]["y"].as_i64().unwrap());
        }
    }
}

#[test]
fn reported_paths_feed_back_into_path_commands() {
    let v = machine(&["dicriticals", "y^2/x^3"]);
    let path = serde_json::to_string(&v["records"][0]["path"]).unwrap();
    let cert = machine(&["--path", &path, "rees-certificate", "x^3, y^2"]);
    assert_eq!(cert["decision"], true);
    let simple = machine(&["--path", &path, "simple-ideal"]);
    assert_eq!(simple["data"]["ideal"], "(y^2, x^3, x^2*y)");
    assert_eq!(simple["data"]["threshold"], 6);
}

#[test]
fn variables_and_fields() {
    let v = machine(&["--vars", "s,t", "--field", "Fp:5", "dicriticals", "t^2/s^3"]);
    assert_eq!(v["field"], "Fp:5");
    assert_eq!(v["records"][0]["values"]["s"], 2);
    assert_eq!(v["records"][0]["values"]["t"], 3);
    // At infinity the global names are X, Y; lowercase is accepted too.
    let a = machine(&["at-infinity", "X^3 - Y^2"]);
    let b = machine(&["at-infinity", "x^3 - y^2"]);
    assert_eq!(a["records"], b["records"]);
    assert_eq!(a["records"][0]["values"]["X"], -2);
    assert_eq!(dicrit(&["--vars", "x,x", "colength", "x, y"]).status.code(), Some(2));
}

#[test]
fn irrational_directions_are_serialized_with_their_extension() {
    let v = machine(&["dicriticals", "(y^2 - 2*x^2)/x^3"]);
    let recs = v["records"].as_array().unwrap();
    let ext = recs.iter().find(|r| r["path"][0]["extension"].is_object()).expect("a dicritical over Q(sqrt 2)");
    assert_eq!(ext["path"][0]["extension"]["minpoly"], serde_json::json!(["-2", "0", "1"]));
}
