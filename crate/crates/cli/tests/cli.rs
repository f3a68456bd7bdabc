//! End-to-end tests of the command line binary: exit codes, output shape,
//! and determinism of the machine format.

use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ruelle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ruelle"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout_lines(output: &Output) -> Vec<String> {
    String::from_utf8(output.stdout.clone())
        .expect("utf8 output")
        .lines()
        .map(str::to_string)
        .collect()
}

fn machine_rows(output: &Output) -> Vec<serde_json::Value> {
    stdout_lines(output)
        .iter()
        .map(|line| serde_json::from_str(line).expect("machine line is JSON"))
        .collect()
}

fn spec_file(contents: &str) -> NamedTempFile {
    let mut file = NamedTempFile::new().expect("temp file");
    file.write_all(contents.as_bytes()).expect("write spec");
    file
}

const BROKEN_ORBIT_SPEC: &str = r#"{
  "format_version": 1,
  "manifold_dim": 1,
  "bundle": { "rank": 1 },
  "fixed_points": [],
  "closed_orbits": [
    {
      "id": "circle",
      "period": "3",
      "stable_dim": 0,
      "twisted": false,
      "holonomy_phases": ["1/4"]
    }
  ]
}"#;

#[test]
fn validate_passes_on_every_builtin() {
    for name in ["s2-height", "torus-gradient", "s1-rotation", "s3-seifert", "twisted-orbit"] {
        let output = run(&["validate", "--example", name]);
        assert!(output.status.success(), "{name}: {output:?}");
    }
}

#[test]
fn validate_reports_rule_failures_with_exit_one() {
    let file = spec_file(BROKEN_ORBIT_SPEC);
    let path = file.path().to_str().unwrap();
    let output = run(&["validate", "--spec", path, "--format", "machine"]);
    assert_eq!(output.status.code(), Some(1), "{output:?}");
    let rows = machine_rows(&output);
    let failing: Vec<_> = rows
        .iter()
        .filter(|row| row["ok"] == serde_json::Value::Bool(false))
        .collect();
    assert_eq!(failing.len(), 1, "exactly one rule fails: {rows:?}");
    assert_eq!(failing[0]["rule"], "orbit-stable-dim-range");
}

#[test]
fn other_commands_reject_invalid_specs_with_exit_two() {
    let file = spec_file(BROKEN_ORBIT_SPEC);
    let path = file.path().to_str().unwrap();
    let output = run(&["spectrum", "--spec", path, "--window", "1"]);
    assert_eq!(output.status.code(), Some(2), "{output:?}");
    assert!(!output.stderr.is_empty());
}

#[test]
fn input_errors_exit_two() {
    let unknown = run(&["morse", "--example", "no-such-flow"]);
    assert_eq!(unknown.status.code(), Some(2));

    let bad_literal = run(&["zfun", "--example", "s1-rotation", "--at", "2+*i"]);
    assert_eq!(bad_literal.status.code(), Some(2));

    let missing_source = run(&["morse"]);
    assert_eq!(missing_source.status.code(), Some(2));

    let left_half_plane = run(&["zfun", "--example", "s1-rotation", "--at", "-1+0i"]);
    assert_eq!(left_half_plane.status.code(), Some(2));
}

#[test]
fn torsion_at_the_zero_frequency_is_a_domain_error() {
    let output = run(&["torsion", "--example", "s1-rotation", "--nu", "0"]);
    assert_eq!(output.status.code(), Some(2), "{output:?}");
}

#[test]
fn spectrum_window_one_lists_six_lines() {
    let output = run(&[
        "spectrum", "--example", "s1-rotation", "--window", "1", "--format", "machine",
    ]);
    assert!(output.status.success());
    let rows = machine_rows(&output);
    assert_eq!(rows.len(), 6);
    let frequencies: Vec<&str> = rows.iter().map(|row| row["nu"].as_str().unwrap()).collect();
    assert_eq!(frequencies, ["-11/12", "-7/12", "-1/4", "1/12", "5/12", "3/4"]);
}

#[test]
fn machine_output_is_byte_identical_across_runs() {
    let args = [
        "torsion", "--example", "s3-seifert", "--nu", "3/5", "--seed", "11", "--trials", "5",
        "--format", "machine",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let zeta_first = run(&["zeta", "--example", "s3-seifert", "--format", "machine"]);
    let zeta_second = run(&["zeta", "--example", "s3-seifert", "--format", "machine"]);
    assert_eq!(zeta_first.stdout, zeta_second.stdout);
}

#[test]
fn morse_table_ends_with_top_equality() {
    let output = run(&["morse", "--example", "s2-height", "--format", "machine"]);
    assert!(output.status.success());
    let rows = machine_rows(&output);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2]["relation"], "eq");
    assert_eq!(rows[2]["lhs"], rows[2]["rhs"]);
    for row in rows {
        assert_eq!(row["holds"], serde_json::Value::Bool(true));
    }
}

#[test]
fn example_documents_roundtrip_through_validate() {
    for name in ["s2-height", "torus-gradient", "s1-rotation", "s3-seifert", "twisted-orbit"] {
        let document = run(&["examples", "--name", name]);
        assert!(document.status.success());
        let file = spec_file(&String::from_utf8(document.stdout).unwrap());
        let path = file.path().to_str().unwrap();
        let output = run(&["validate", "--spec", path]);
        assert!(output.status.success(), "{name} roundtrip failed: {output:?}");
    }
}

#[test]
fn spectral_determinant_matches_the_known_value() {
    let output = run(&[
        "zfun", "--example", "s1-rotation", "--at", "1+0i", "--format", "machine",
    ]);
    assert!(output.status.success());
    let rows = machine_rows(&output);
    let spectral = rows
        .iter()
        .find(|row| row["quantity"] == "z_rs_spectral")
        .expect("spectral row present");
    let re = spectral["value"]["re"].as_f64().unwrap();
    let im = spectral["value"]["im"].as_f64().unwrap();
    assert!((re - 1.0).abs() <= 1e-9);
    assert!((im - (-3.0f64).exp()).abs() <= 1e-9);
    let agreement = rows
        .iter()
        .find(|row| row["quantity"] == "z_rs_agreement")
        .expect("agreement row present");
    assert_eq!(agreement["ok"], serde_json::Value::Bool(true));
}

#[test]
fn fuller_check_passes_on_the_rotation_example() {
    let output = run(&[
        "fuller", "--example", "s1-rotation", "--t0", "3", "--sigma", "0.2", "--cutoff", "10",
        "--horizon", "30", "--format", "machine",
    ]);
    assert!(output.status.success(), "{output:?}");
    let rows = machine_rows(&output);
    let comparison = rows
        .iter()
        .find(|row| row["side"] == "comparison")
        .expect("comparison row present");
    assert_eq!(comparison["pass"], serde_json::Value::Bool(true));
}

#[test]
fn koszul_homology_matches_fixed_point_counts() {
    let output = run(&["koszul", "--example", "s2-height", "--format", "machine"]);
    assert!(output.status.success());
    for row in machine_rows(&output) {
        assert_eq!(row["homology"], row["expected"], "{row:?}");
        assert_eq!(row["ok"], serde_json::Value::Bool(true));
    }
}

#[test]
fn dump_complex_emits_labeled_matrices() {
    let output = run(&[
        "torsion", "--example", "s1-rotation", "--nu", "1/12", "--dump-complex", "--format",
        "machine",
    ]);
    assert!(output.status.success());
    let rows = machine_rows(&output);
    assert!(!rows.is_empty());
    for row in &rows {
        assert!(row["labels"].is_array(), "{row:?}");
        assert!(row["differential"].is_array(), "{row:?}");
        assert!(row["contraction"].is_array(), "{row:?}");
    }
}

#[test]
fn precision_terms_environment_variable_is_honored() {
    let args = ["zeta", "--example", "s1-rotation", "--format", "machine"];
    let tuned = run_with_env(&args, "RT_PRECISION_TERMS", "48");
    assert!(tuned.status.success(), "{tuned:?}");

    // A well-formed setting is required whenever the variable is present,
    // even if a flag overrides the value it carries.
    let broken = run_with_env(&args, "RT_PRECISION_TERMS", "not-a-number");
    assert_eq!(broken.status.code(), Some(2), "{broken:?}");
    let flagged = run_with_env(
        &["zeta", "--example", "s1-rotation", "--em-terms", "32", "--format", "machine"],
        "RT_PRECISION_TERMS",
        "not-a-number",
    );
    assert_eq!(flagged.status.code(), Some(2), "{flagged:?}");
}
