//! End-to-end tests of the binary: exit codes, the contracted output
//! lines, format parity, and spec-file handling.

use std::path::PathBuf;
use std::process::{Command, Output};

fn gda(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gda"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn spec(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "specs", name]
        .iter()
        .collect();
    path.to_string_lossy().into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn run_im_emb_prints_the_betti_row_and_passes() {
    let out = gda(&["run", "im_emb_model", "--max-degree", "12"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("betti: 1 0 2 1 1 1 1 1 1 1 1 1 1"), "{text}");
    assert!(text.contains("overall: PASS"));
}

#[test]
fn run_tor_names_the_degree_four_representative() {
    let out = gda(&["run", "tor_h4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("total degree 4: dim 1, representative rs"), "{text}");
    assert!(text.contains("overall: PASS"));
}

#[test]
fn missing_spec_file_is_exit_two() {
    let out = gda(&["cohomology", "--spec", "missing.json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn unknown_preset_is_exit_two() {
    let out = gda(&["run", "no_such_preset"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown preset"));
}

#[test]
fn zero_k_is_exit_two() {
    let out = gda(&["run", "im_emb_model", "--k", "0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn parse_error_location_is_reported() {
    let dir = std::env::temp_dir().join("gda-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{\n  \"format_version\": oops\n}").unwrap();
    let out = gda(&["cohomology", "--spec", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("2:"), "stderr should carry a location: {err}");
}

#[test]
fn kind_mismatch_is_exit_two() {
    let out = gda(&["cohomology", "--spec", &spec("torus_amalgam.json")]);
    assert_eq!(code(&out), 2);
}

#[test]
fn sample_sphere_file_passes() {
    let out = gda(&["cohomology", "--spec", &spec("sphere.json")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("betti: 1 0 1 0 0 0 0"));
}

#[test]
fn sample_amalgam_file_passes() {
    let out = gda(&["amalgam", "--spec", &spec("torus_amalgam.json")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("dims: 1 3 4 4 4 4 4"));
}

#[test]
fn sample_koszul_file_passes() {
    let out = gda(&["tor", "--spec", &spec("koszul_tor.json")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("totals: 1 0 2 1 1"));
}

#[test]
fn failing_expectation_is_exit_one() {
    let dir = std::env::temp_dir().join("gda-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("failing.json");
    let doctored = std::fs::read_to_string(spec("sphere.json"))
        .unwrap()
        .replace("{ \"value\": 1 },\n      { \"value\": 0 },\n      { \"value\": 1 }", "{ \"value\": 1 },\n      { \"value\": 0 },\n      { \"value\": 2 }");
    assert!(doctored.contains("\"value\": 2"), "doctoring must apply");
    std::fs::write(&path, doctored).unwrap();
    let out = gda(&["cohomology", "--spec", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("MISMATCH"));
}

#[test]
fn json_format_carries_every_number_of_the_text_format() {
    let text_out = gda(&["run", "emb_model", "--max-degree", "8"]);
    let json_out = gda(&["run", "emb_model", "--max-degree", "8", "--format", "json"]);
    assert_eq!(code(&text_out), 0);
    assert_eq!(code(&json_out), 0);
    let text = stdout(&text_out);
    let json = stdout(&json_out);
    let parsed: serde_json::Value = serde_json::from_str(&json).expect("valid json");
    assert_eq!(parsed["verdict"], "PASS");
    for token in text.split_whitespace() {
        if token.chars().all(|c| c.is_ascii_digit()) {
            assert!(json.contains(token), "number {token} missing from json");
        }
    }
}

#[test]
fn list_is_stable_and_complete() {
    let first = gda(&["list"]);
    let second = gda(&["list"]);
    assert_eq!(code(&first), 0);
    assert_eq!(stdout(&first), stdout(&second));
    let text = stdout(&first);
    for name in [
        "symp_m_model",
        "symp_mtilde_model",
        "relative_model",
        "im_emb_model",
        "emb_model",
        "pontryagin_tilde",
        "pontryagin_full",
        "tor_h4",
        "fiber_z2",
        "im_emb_z2_split",
        "zp_dimension_match",
        "splitting_check",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
    assert!(text.contains("source:"));
    let json_out = gda(&["list", "--format", "json"]);
    let parsed: serde_json::Value =
        serde_json::from_str(&stdout(&json_out)).expect("valid json");
    assert!(parsed.as_array().unwrap().len() >= 12);
}

#[test]
fn preset_fields_are_enforced() {
    let out = gda(&["run", "fiber_z2", "--field", "q"]);
    assert_eq!(code(&out), 2);
    let out = gda(&["run", "fiber_z2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("dims: 1 0 0 1 1 1 2 3 4"));
}

#[test]
fn representatives_flag_prints_cocycles() {
    let out = gda(&["run", "im_emb_model", "--max-degree", "5", "--representatives"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("representatives:"));
    assert!(text.contains("degree 3"));
}
