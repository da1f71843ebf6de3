//! End-to-end tests of the `kolmo` binary: exit codes, JSON schemas, CSV
//! shape, determinism, and the --out escape hatch.

use std::process::{Command, Output};

fn kolmo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kolmo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn constant_kolmogorov_is_sqrt_two() {
    let out = kolmo(&["constant", "kolmogorov", "--k", "1", "--r", "2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let value = v["value"].as_f64().unwrap();
    assert!((value - 2f64.sqrt()).abs() < 1e-9);
    assert!(v["tolerances"]["tol_check"].as_f64().unwrap() > 0.0);
}

#[test]
fn constant_favard_r2() {
    let out = kolmo(&["constant", "favard", "--r", "2"]);
    assert!(out.status.success());
    let value = stdout_json(&out)["value"].as_f64().unwrap();
    assert!((value - std::f64::consts::PI.powi(2) / 8.0).abs() < 1e-12);
}

#[test]
fn constant_dragomir_matches_modulus() {
    let out = kolmo(&["constant", "dragomir", "--eta", "0.5"]);
    assert!(out.status.success());
    let c = stdout_json(&out)["value"].as_f64().unwrap();

    let out = kolmo(&[
        "modulus",
        "--orders",
        "0,1,2,3",
        "--spec",
        "dragomir:0.5",
        "--delta",
        "1",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let omega = v["omega"].as_f64().unwrap();
    assert!((omega - c).abs() < 1e-9 * c);
    assert!(v["attained"].as_bool().unwrap());
    assert!(v["argmax"]["b"].as_f64().unwrap() > 0.0);
}

#[test]
fn constant_dragomir_endpoint_and_bad_eta() {
    let out = kolmo(&["constant", "dragomir", "--eta", "0"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["method"].as_str().unwrap(), "classical-reduction");
    assert!((v["value"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-12);

    let out = kolmo(&["constant", "dragomir", "--eta", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spline_emits_header_and_rows() {
    let out = kolmo(&[
        "spline", "--a", "0.7", "--b", "1.3", "--c", "1.0", "--s", "2", "--samples", "500",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let (header, csv) = text.split_once("t,value\n").expect("csv header present");
    let v: serde_json::Value = serde_json::from_str(header).unwrap();
    let norms = v["norms"].as_array().unwrap();
    assert!((norms[0]["value"].as_f64().unwrap() - 1.3).abs() < 1e-12);
    assert!(
        (norms[1]["value"].as_f64().unwrap() - (0.7 * 1.3 + 1.3 * 1.3 / 2.0)).abs() < 1e-12
    );
    let rows: Vec<&str> = csv.trim_end().lines().collect();
    assert_eq!(rows.len(), 500);
    assert!(rows[0].starts_with("0.0000000000000000e0,"));
}

#[test]
fn spline_square_wave_values() {
    let out = kolmo(&["spline", "--b", "1", "--s", "0", "--samples", "64"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let csv = text.split_once("t,value\n").unwrap().1;
    for line in csv.trim_end().lines() {
        let value: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!(
            value == 1.0 || value == -1.0 || value == 0.0,
            "unexpected square-wave sample {value}"
        );
    }
}

#[test]
fn spline_rejects_bad_ramp() {
    let out = kolmo(&["spline", "--b", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn admissible_exit_codes() {
    let boundary = kolmo(&["admissible", "--orders", "0,1,2", "--values", "1,1.4142,1"]);
    assert_eq!(boundary.status.code(), Some(0));
    let v = stdout_json(&boundary);
    assert!(v["decision"]["witness"]["lambda"].as_f64().unwrap() > 0.0);

    let violating = kolmo(&["admissible", "--orders", "0,1,2", "--values", "1,1.5,1"]);
    assert_eq!(violating.status.code(), Some(1));

    let malformed = kolmo(&["admissible", "--orders", "0,1,2", "--values", "1,1.5"]);
    assert_eq!(malformed.status.code(), Some(2));

    let bad_orders = kolmo(&["admissible", "--orders", "0,1,2,5", "--values", "1,1,1,1"]);
    assert_eq!(bad_orders.status.code(), Some(2));
}

#[test]
fn admissible_vector_round_trip_shape() {
    // norms of psi_4(0, 1, 0.5) for orders (0,1,2,4), computed upstream
    let out = kolmo(&[
        "admissible",
        "--orders",
        "0,1,2,4",
        "--values",
        "0.5208333333333334,0.5833333333333334,0.5,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["kind"].as_str().unwrap(), "vector");
    let beta = v["decision"]["beta"].as_f64().unwrap();
    assert!((beta - 0.5).abs() < 1e-4, "beta = {beta}");
}

#[test]
fn modulus_rejects_zero_delta_and_unknown_spec() {
    let out = kolmo(&[
        "modulus",
        "--orders",
        "0,1,2,3",
        "--spec",
        "dragomir:0.5",
        "--delta",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = kolmo(&[
        "modulus", "--orders", "0,1,2,3", "--spec", "nope:1", "--delta", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn modulus_accepts_box_and_hom_grammar() {
    let out = kolmo(&[
        "modulus",
        "--orders",
        "0,1,2,3",
        "--spec",
        "box:2=1000000,3=1",
        "--delta",
        "1",
    ]);
    assert!(out.status.success());
    let omega = stdout_json(&out)["omega"].as_f64().unwrap();
    // classical three-norm value for (k, r) = (1, 3) at delta = 1
    let c13 = (9.0f64 / 8.0).powf(1.0 / 3.0);
    assert!((omega - c13).abs() < 1e-4, "omega = {omega}");

    let out = kolmo(&[
        "modulus",
        "--orders",
        "0,1,2,3",
        "--spec",
        "hom:2^0.5,3^0.5@1",
        "--delta",
        "1",
    ]);
    assert!(out.status.success());
}

#[test]
fn modulus_config_escape_hatch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    std::fs::write(
        &path,
        r#"{"kind":"homogeneous","terms":[{"order":2,"theta":0.5},{"order":3,"theta":0.5}],"level":1.0}"#,
    )
    .unwrap();
    let out = kolmo(&[
        "modulus",
        "--orders",
        "0,1,2,3",
        "--config",
        path.to_str().unwrap(),
        "--delta",
        "1",
    ]);
    assert!(out.status.success());
    let grammar = kolmo(&[
        "modulus",
        "--orders",
        "0,1,2,3",
        "--spec",
        "hom:2^0.5,3^0.5@1",
        "--delta",
        "1",
    ]);
    assert_eq!(out.stdout, grammar.stdout);
}

#[test]
fn verify_comparison_scaled_copy() {
    let out = kolmo(&["verify", "comparison", "--case", "euler", "--scale", "0.5"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["report"]["violations"].as_u64().unwrap(), 0);
    assert!(!v["report"]["experimental"].as_bool().unwrap());

    let out = kolmo(&[
        "verify",
        "comparison",
        "--case",
        "rodov",
        "--orders",
        "0,1,2,4",
        "--a",
        "0",
        "--b",
        "1",
        "--c",
        "0.5",
        "--scale",
        "0.9",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["report"]["violations"].as_u64().unwrap(), 0);
}

#[test]
fn verify_comparison_rejects_violated_hypotheses() {
    // scaling above 1 breaks the norm domination required by the theorem
    let out = kolmo(&["verify", "comparison", "--case", "euler", "--scale", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8(out.stderr).unwrap();
    assert!(msg.contains("hypotheses"), "stderr: {msg}");
}

#[test]
fn identical_inputs_give_identical_bytes() {
    let args = [
        "modulus",
        "--orders",
        "0,1,2,3",
        "--spec",
        "dragomir:0.25",
        "--delta",
        "2",
    ];
    let first = kolmo(&args);
    let second = kolmo(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("constant.json");
    let out = kolmo(&[
        "constant",
        "favard",
        "--r",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!((v["value"].as_f64().unwrap() - std::f64::consts::PI / 2.0).abs() < 1e-12);
}

#[test]
fn kolmo_tol_env_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_kolmo"))
        .args(["constant", "dragomir", "--eta", "0.5"])
        .env("KOLMO_TOL", "1e-4")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["tolerances"]["tol_check"].as_f64().unwrap(), 1e-4);
}
