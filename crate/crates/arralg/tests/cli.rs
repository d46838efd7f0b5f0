//! End-to-end runs of the arralg binary against the bundled input files.

use std::path::Path;
use std::process::{Command, Output};

fn input(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/inputs")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn arralg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arralg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_stdout(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn analyze_generic_instance_reports_the_expected_invariants() {
    let out = arralg(&["analyze", &input("generic_3_5.json"), "--expect-paper"]);
    let rep = json_stdout(&out);
    assert_eq!(rep["schema_version"], 1);
    assert_eq!(rep["r_indeg"], 3);
    assert_eq!(rep["regularity"], 6);
    assert_eq!(rep["satiety"], 6);
    assert_eq!(rep["depth"], 0);
    assert_eq!(rep["projective_dimension"], 3);
    assert_eq!(rep["saturation_equals_fold"], true);
    assert_eq!(rep["fiber_criterion"], true);
    assert_eq!(rep["linear_type"], true);
    assert_eq!(rep["is_free"], false);
    assert_eq!(rep["rees_is_ci"], false);
    assert_eq!(rep["expectations"]["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn analyze_char2_instance_flips_the_generic_picture() {
    let out = arralg(&["analyze", &input("char2.json")]);
    let rep = json_stdout(&out);
    assert_eq!(rep["f_in_jacobian"], false);
    assert_eq!(rep["saturation_equals_fold"], false);
    assert_eq!(rep["r_indeg"], 1);
    assert_eq!(rep["is_free"], true);
    assert_eq!(rep["betti"]["1,3"], 3);
    assert_eq!(rep["betti"]["2,4"], 1);
    assert_eq!(rep["betti"]["2,5"], 1);
    assert!(rep["characteristic_warnings"][0]
        .as_str()
        .unwrap()
        .contains("divides the number of forms"));
}

#[test]
fn field_override_changes_the_verdicts() {
    let out = arralg(&["analyze", &input("char2.json"), "--field", "Q"]);
    let rep = json_stdout(&out);
    assert_eq!(rep["f_in_jacobian"], true);
    assert_eq!(rep["saturation_equals_fold"], true);
    assert_eq!(rep["characteristic_warnings"].as_array().unwrap().len(), 0);
}

#[test]
fn analyze_free_arrangement() {
    let out = arralg(&["analyze", &input("free_xyzxy.json"), "--expect-paper"]);
    let rep = json_stdout(&out);
    assert_eq!(rep["is_free"], true);
    assert_eq!(rep["rees_is_ci"], true);
    assert_eq!(rep["r_indeg"], 1);
    assert_eq!(rep["expectations"]["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn analyze_output_is_byte_identical_across_runs() {
    let a = arralg(&["analyze", &input("generic_3_5.json")]);
    let b = arralg(&["analyze", &input("generic_3_5.json")]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn conjectures_on_a_random_suite_hold() {
    let out = arralg(&["conjectures", "--random", "3", "4", "2", "17", "--expect-paper"]);
    let rep = json_stdout(&out);
    assert_eq!(rep["reduction_total"], 2);
    assert_eq!(rep["reduction_pass"], 2);
    assert_eq!(rep["all_hold"], true);
}

#[test]
fn conjectures_on_the_char2_instance_is_expected_negative() {
    let out = arralg(&["conjectures", &input("char2.json")]);
    let rep = json_stdout(&out);
    assert_eq!(rep["expected_negative"], 1);
    assert_eq!(rep["instances"][0]["verdict"], "expected-negative");
    assert_eq!(rep["instances"][0]["reduction_r"], serde_json::Value::Null);
    assert_eq!(rep["instances"][0]["fiber_criterion"], false);
}

#[test]
fn forms_suite_on_the_quadric_cubic_pair() {
    let out = arralg(&["forms", &input("fermat_pair.json")]);
    let rep = json_stdout(&out);
    assert_eq!(rep["transversality"]["nearly_transversal"], true);
    assert_eq!(rep["two_forms"]["g_squared_in_saturation"], true);
    assert_eq!(rep["two_forms"]["depth_is_zero"], true);
    assert_eq!(rep["indeg_bound"]["holds"], true);
}

#[test]
fn gb_debug_dump_is_reduced_and_sorted() {
    let out = arralg(&["gb", &input("char2.json")]);
    let rep = json_stdout(&out);
    assert_eq!(rep["count"], 3);
    let basis: Vec<&str> =
        rep["basis"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert!(basis.contains(&"y^2*z + y*z^2"));
}

#[test]
fn unreadable_or_invalid_input_exits_one() {
    let out = arralg(&["analyze", "/nonexistent/nope.json"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("cannot read"));
}

#[test]
fn stage_timeout_exits_three() {
    let out = arralg(&[
        "analyze",
        &input("generic_3_5.json"),
        "--timeout-gb",
        "0.0005",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("exceeded its time budget"));
}

#[test]
fn pretty_and_compact_agree_on_content() {
    let compact = arralg(&["analyze", &input("free_xyzxy.json")]);
    let pretty = arralg(&["analyze", &input("free_xyzxy.json"), "--pretty"]);
    let a = json_stdout(&compact);
    let b = json_stdout(&pretty);
    assert_eq!(a, b);
    assert!(pretty.stdout.len() > compact.stdout.len());
}
