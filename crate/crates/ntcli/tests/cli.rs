//! End-to-end tests of the `ntverify` binary: argument handling, output
//! formats, the exit-code contract, and the determinism of `verify-all`.

use std::process::{Command, Output};

fn ntverify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ntverify"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn assumptions_path() -> String {
    format!("{}/../../assumptions.txt", env!("CARGO_MANIFEST_DIR"))
}

fn parse_stdout(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is one JSON document")
}

#[test]
fn honda_reports_the_expected_l_basis() {
    let out = ntverify(&["honda", "--p", "3", "--r", "2", "--delta", "p,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = parse_stdout(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["values"]["l_basis"], serde_json::json!(["e2"]));
}

#[test]
fn honda_with_depth_merges_the_comultiplication_checks() {
    let out = ntverify(&["honda", "--depth", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = parse_stdout(&out);
    assert_eq!(v["inputs"]["depth"], "6");
    let ids: Vec<&str> =
        v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"hom.coassociativity"), "{ids:?}");
    assert!(ids.contains(&"hom.e1"), "{ids:?}");
}

#[test]
fn ext_dimension_is_four_for_the_quadratic_residue_field() {
    let out = ntverify(&["ext", "--k-deg", "2", "--f-deg", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = parse_stdout(&out);
    assert_eq!(v["values"]["dimension"], 4);
}

#[test]
fn maprime_reports_the_bound_values() {
    let out = ntverify(&["maprime", "--p", "5", "--e", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = parse_stdout(&out);
    assert_eq!(v["values"]["total_bound_f"], 5);
    assert_eq!(v["values"]["corollary_bound_f"], 4);
    assert_eq!(v["values"]["rank_over_s"], 8);
}

#[test]
fn curve_reduce_counts_the_reference_points() {
    let out = ntverify(&["curve", "reduce", "1,1,1,-10,-10 over Q(sqrt(2))", "--p", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = parse_stdout(&out);
    assert_eq!(v["values"]["reduction_type"], "Good");
    assert_eq!(v["values"]["point_count"], 8);
}

#[test]
fn curve_inertia_without_a_record_runs_the_built_in_example() {
    let out = ntverify(&["curve", "inertia"]);
    assert_eq!(out.status.code(), Some(0));
    let v = parse_stdout(&out);
    assert_eq!(v["id"], "ramified-inertia");
    assert_eq!(v["status"], "pass");
}

#[test]
fn curve_inertia_rejects_ordinary_reduction() {
    // y^2 = x^3 + x + 2 over F_5 has 7 points, trace -1: ordinary.
    let out = ntverify(&["curve", "inertia", "0,0,0,1,2 over Q", "--p", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("Precondition"), "{err}");
}

#[test]
fn missing_assumption_file_exits_one() {
    let out = ntverify(&["x015", "--d", "2", "--assume", "/no/such/file.txt"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("MissingAssumption"), "{err}");
}

#[test]
fn x015_concludes_with_the_assumptions_in_place() {
    let out = ntverify(&["x015", "--d", "2", "--assume", &assumptions_path()]);
    assert_eq!(out.status.code(), Some(0));
    let v = parse_stdout(&out);
    assert_eq!(v["values"]["conclusion"], "exactly eight points, four cusps");
    assert!(!v["assumptions"].as_array().unwrap().is_empty());
}

#[test]
fn classno_control_field_reports_two() {
    let out = ntverify(&["classno", "Q(sqrt(-6))"]);
    assert_eq!(out.status.code(), Some(0));
    let v = parse_stdout(&out);
    assert_eq!(v["values"]["class_number"], 2);
}

#[test]
fn exhausted_search_exits_two() {
    let out = ntverify(&["classno", "Q(sqrt(10))"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("SearchInconclusive"), "{err}");
}

#[test]
fn text_mode_renders_one_line_per_check() {
    let out = ntverify(&["sylow2", "--text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[PASS] order-tau"), "{text}");
    assert!(text.trim_end().ends_with("status pass"), "{text}");
}

#[test]
fn usage_errors_exit_sixty_four() {
    assert_eq!(ntverify(&["honda", "--bogus"]).status.code(), Some(64));
    assert_eq!(ntverify(&["no-such-command"]).status.code(), Some(64));
    assert_eq!(ntverify(&[]).status.code(), Some(64));
}

#[test]
fn help_is_not_a_usage_error() {
    let out = ntverify(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verify-all"));
}

#[test]
fn verify_all_output_is_byte_identical_across_runs() {
    let path = assumptions_path();
    let first = ntverify(&["verify-all", "--assume", &path]);
    let second = ntverify(&["verify-all", "--assume", &path]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(second.status.code(), Some(0));
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout, "aggregate output must not vary");
    let v = parse_stdout(&first);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["runtime_ms"], 0);
    // Every criterion family contributes at least one check.
    let ids: Vec<&str> =
        v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    for prefix in [
        "01-witt.", "02-congruence.", "03-hom.", "04-honda.", "05-ext.", "06-maprime.",
        "07-inertia.", "08-x015.", "09-classno.", "10-sylow2.",
    ] {
        assert!(ids.iter().any(|id| id.starts_with(prefix)), "no checks under {prefix}");
    }
}
