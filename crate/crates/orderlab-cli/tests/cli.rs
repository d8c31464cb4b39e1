//! End-to-end command tests: exit codes, witness replay, byte stability,
//! schema errors with pointer paths, and the global element cap.

use std::io::Write;
use std::process::{Command, Output};

fn orderlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orderlab"))
        .args(args)
        .env_remove("ORDERLAB_MAX_ELEMENTS")
        .output()
        .expect("binary runs")
}

fn write_fixture(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join("orderlab-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path.to_string_lossy().into_owned()
}

fn m3_fixture() -> String {
    write_fixture(
        "m3.json",
        r#"{"elements":["0","a","b","c","1"],
            "le":[["0","a"],["0","b"],["0","c"],["a","1"],["b","1"],["c","1"]]}"#,
    )
}

fn sierpinski_fixture() -> String {
    write_fixture("s.json", r#"{"points":["0","1"],"opens":[[],["1"],["0","1"]]}"#)
}

#[test]
fn check_distributive_m3_fails_with_replayable_witness() {
    let out = orderlab(&["--format", "json", "check", "distributive", &m3_fixture()]);
    assert_eq!(out.status.code(), Some(1), "fail exits 1");
    let cert: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert["verdict"], "fail");
    let w = &cert["witness"];
    // replay the witness through the library
    let p = std::sync::Arc::new(orderlab::lattice::diamond_m3());
    let l = orderlab::lattice::Lattice::new(p.clone()).unwrap();
    let idx = |v: &serde_json::Value| p.index_of(v.as_str().unwrap()).unwrap();
    let (a, b, c) = (idx(&w["a"]), idx(&w["b"]), idx(&w["c"]));
    let lhs = l.meet(a, l.join(b, c));
    let rhs = l.join(l.meet(a, b), l.meet(a, c));
    assert_ne!(lhs, rhs, "witness must reproduce the failure");
    assert_eq!(p.label(lhs), w["lhs"].as_str().unwrap());
    assert_eq!(p.label(rhs), w["rhs"].as_str().unwrap());
}

#[test]
fn monad_kz_verify_on_sierpinski_passes() {
    let out = orderlab(&["--format", "json", "monad", "F", "kz-verify", &sierpinski_fixture()]);
    assert_eq!(out.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert["verdict"], "pass");
    for key in [
        "cond_i_Te_le_eT",
        "cond_ii_m_adjoint_eT",
        "cond_iii_Te_adjoint_m",
    ] {
        assert_eq!(cert["details"][key], true);
    }
}

#[test]
fn verify_thm6_emits_per_lattice_table() {
    let out = orderlab(&["--format", "json", "verify", "thm6", "--max-size", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert["verdict"], "pass");
    let rows = cert["details"].as_array().unwrap();
    assert_eq!(rows.len(), 10, "lattice classes up to size 5");
    assert!(rows.iter().all(|r| r["consistent"] == true));
    // M3 and N5 show up as the two non-split size-5 rows
    let failing: Vec<_> = rows.iter().filter(|r| r["split"] == false).collect();
    assert_eq!(failing.len(), 2);
    assert!(failing.iter().all(|r| r["size"] == 5 && r["psi"] == false));
}

#[test]
fn output_is_byte_stable() {
    let fixture = m3_fixture();
    let first = orderlab(&["--format", "json", "check", "distributive", &fixture]);
    let second = orderlab(&["--format", "json", "check", "distributive", &fixture]);
    assert_eq!(first.stdout, second.stdout);
    let a = orderlab(&["--format", "json", "verify", "kz-equiv", "--max-size", "2"]);
    let b = orderlab(&["--format", "json", "verify", "kz-equiv", "--max-size", "2"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn schema_violations_exit_2_with_pointer_path() {
    let bad = write_fixture("bad.json", r#"{"elements":["a",42],"le":[]}"#);
    let out = orderlab(&["check", "lattice", &bad]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("/elements/1"), "pointer path in: {stderr}");
}

#[test]
fn cycle_input_is_an_input_error() {
    let bad = write_fixture("cycle.json", r#"{"elements":["a","b"],"le":[["a","b"],["b","a"]]}"#);
    let out = orderlab(&["check", "lattice", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cycle"));
}

#[test]
fn element_cap_is_enforced() {
    let labels: Vec<String> = (0..12).map(|i| format!("\"e{i}\"")).collect();
    let big = write_fixture(
        "big.json",
        &format!(r#"{{"elements":[{}],"le":[]}}"#, labels.join(",")),
    );
    let out = Command::new(env!("CARGO_BIN_EXE_orderlab"))
        .args(["check", "lattice", &big])
        .env("ORDERLAB_MAX_ELEMENTS", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ORDERLAB_MAX_ELEMENTS"));
    // and a higher cap admits it
    let out = Command::new(env!("CARGO_BIN_EXE_orderlab"))
        .args(["check", "lattice", &big])
        .env("ORDERLAB_MAX_ELEMENTS", "12")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "12-antichain is not a lattice");
}

#[test]
fn algebra_find_absent_on_antichain() {
    let antichain = write_fixture("antichain.json", r#"{"elements":["a","b"],"le":[]}"#);
    let out = orderlab(&["--format", "json", "algebra", "D", "find", &antichain]);
    assert_eq!(out.status.code(), Some(1));
    let cert: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert["verdict"], "absent");
}

#[test]
fn search_finds_minimal_nondistributive_lattice() {
    let out = orderlab(&["--format", "json", "search", "lattice&!distributive", "--max-size", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let witness = &cert["witness"];
    assert_eq!(witness["elements"].as_array().unwrap().len(), 5);
    // replay: the witness is a non-distributive lattice
    let p = orderlab::json::poset_from_value(witness, "").unwrap();
    let l = orderlab::lattice::Lattice::new(std::sync::Arc::new(p)).unwrap();
    assert!(!l.is_distributive());
}

#[test]
fn search_exhaustion_reports_absent() {
    let out = orderlab(&["search", "lattice&!distributive", "--max-size", "4"]);
    assert_eq!(out.status.code(), Some(1), "no such lattice below size 5");
}

#[test]
fn timings_flag_is_the_only_source_of_instability() {
    let fixture = sierpinski_fixture();
    let with = orderlab(&["--format", "json", "--timings", "monad", "F", "unit", &fixture]);
    let cert: serde_json::Value = serde_json::from_slice(&with.stdout).unwrap();
    assert!(cert["runtime_ms"].is_number());
    let without = orderlab(&["--format", "json", "monad", "F", "unit", &fixture]);
    let cert: serde_json::Value = serde_json::from_slice(&without.stdout).unwrap();
    assert!(cert.get("runtime_ms").is_none());
}

#[test]
fn unknown_monad_is_an_input_error() {
    let out = orderlab(&["monad", "Q", "apply", &sierpinski_fixture()]);
    assert_eq!(out.status.code(), Some(2));
}
