use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus() -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../workspaces/corpus.json");
    p.to_string_lossy().into_owned()
}

fn nchrr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nchrr")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn temp_workspace(name: &str, body: &str) -> String {
    let p = std::env::temp_dir().join(format!("nchrr-{}-{name}.json", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn corpus_validates() {
    let out = nchrr(&["validate", "--workspace", &corpus()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json_of(&out)["ok"], true);
}

#[test]
fn broken_associativity_names_the_triple() {
    // x^2 = 1 but x * 1 = 0
    let ws = temp_workspace(
        "assoc",
        r#"{"algebras": {"bad": {"basis": ["1", "x"], "degrees": [0, 0], "unit": [1, 0],
            "mult": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 1, 0, 1]]}}}"#,
    );
    let out = nchrr(&["validate", "--workspace", &ws, "--text"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("algebras.bad"), "{text}");
    assert!(text.contains("triple") || text.contains("unit"), "{text}");
}

#[test]
fn dangling_reference_is_an_input_error() {
    let ws = temp_workspace("dangling", r#"{"modules": {"m": {"algebra": "nowhere", "shifts": [0]}}}"#);
    let out = nchrr(&["validate", "--workspace", &ws]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nowhere"));
}

#[test]
fn parse_errors_carry_the_path() {
    let ws = temp_workspace("parse", r#"{"algebras": {"a": {"basis": ["1"], "degrees": ["zero"], "unit": [1]}}}"#);
    let out = nchrr(&["validate", "--workspace", &ws]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("algebras.a"));
    assert_eq!(nchrr(&["validate", "--workspace", "/nonexistent/ws.json"]).status.code(), Some(2));
}

#[test]
fn hrr_reports() {
    let ws = corpus();
    let out = nchrr(&["hrr", "--workspace", &ws, "--m", "A2_S1", "--n", "A2_S2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["chi_oracle"], -1);
    assert_eq!(v["pairing"], "-1");
    assert_eq!(v["rr1_tensor"], -1);
    assert_eq!(v["equal"], true);
    assert!(v["euler_chain_summary"].is_object());

    let v = json_of(&nchrr(&["hrr", "--workspace", &ws, "--m", "k_eps_free", "--n", "k_eps_free"]));
    assert_eq!((v["chi_oracle"].clone(), v["pairing"].clone()), (Value::from(0), Value::from("0")));

    let v = json_of(&nchrr(&["hrr", "--workspace", &ws, "--m", "Kr_P2", "--n", "Kr_P1"]));
    assert_eq!((v["chi_oracle"].clone(), v["pairing"].clone()), (Value::from(2), Value::from("2")));

    let all = nchrr(&["hrr", "--workspace", &ws]);
    assert_eq!(all.status.code(), Some(0));
    assert_eq!(json_of(&all)["ok"], true);
}

#[test]
fn euler_class_of_a_free_module() {
    let out = nchrr(&["eu", "--workspace", &corpus(), "--module", "k_eps_free", "--text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("eu(k_eps_free) = 1\n"));
}

#[test]
fn orbifold_gram_of_z2() {
    let out = nchrr(&["orbifold", "--workspace", &corpus(), "--group", "Z2", "--text"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "Z2: [[2, -2], [-2, 2]]\n");
}

#[test]
fn frobenius_agreements() {
    let out = nchrr(&["frobenius", "--workspace", &corpus(), "--name", "kZ2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json_of(&out)["results"][0];
    assert_eq!((r["agreed"].clone(), r["trials"].clone()), (Value::from(50), Value::from(50)));
}

#[test]
fn hh_and_pair_and_ringel() {
    let ws = corpus();
    let v = json_of(&nchrr(&["hh", "--workspace", &ws, "--algebra", "k_x", "--degree", "-1"]));
    assert_eq!(v["results"][0]["dimension"], 1);
    assert_eq!(v["results"][0]["exact"], true);
    let v = json_of(&nchrr(&["pair", "--workspace", &ws, "--left", "k_x_one", "--right", "k_x_one"]));
    assert_eq!(v["results"][0]["value"], "2");
    assert_eq!(v["results"][0]["path"], "trace");
    let out = nchrr(&["ringel", "--workspace", &ws, "--quiver", "Kronecker", "--trials", "5"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unknown_names_are_input_errors() {
    assert_eq!(nchrr(&["eu", "--workspace", &corpus(), "--module", "nope"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let ws = corpus();
    let a = nchrr(&["ringel", "--workspace", &ws, "--seed", "3", "--trials", "4"]);
    let b = nchrr(&["ringel", "--workspace", &ws, "--seed", "3", "--trials", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let path = std::env::temp_dir().join(format!("nchrr-{}-out.json", std::process::id()));
    let p = path.to_string_lossy().into_owned();
    let c = nchrr(&["ringel", "--workspace", &ws, "--seed", "3", "--trials", "4", "--out", &p]);
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn prime_field_override() {
    let out = nchrr(&["hrr", "--workspace", &corpus(), "--field", "fp:7", "--m", "A2_S1", "--n", "A2_S2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["pairing"], "6");
}
