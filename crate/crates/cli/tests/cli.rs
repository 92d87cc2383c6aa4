use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_superzeta")
}

fn shipped_config() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/reference_gamma2.json")
}

/// Runs in an empty directory with no config in the environment.
fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(dir)
        .env_remove("SUPERZETA_CONFIG")
        .env_remove("SUPERZETA_THREADS")
        .env_remove("SOURCE_DATE_EPOCH")
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> (Output, tempfile::TempDir) {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), args);
    (out, dir)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn value_re(v: &Value) -> f64 {
    v["result"]["value_re"].as_f64().unwrap()
}

#[test]
fn zeta_h_at_two() {
    let (out, _d) = run(&["eval", "zeta-h", "--s", "2", "--z", "1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert!((value_re(&v) - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-14);
    assert!(v["result"]["abs_error"].as_f64().unwrap() < 1e-13);
    assert!(v["manifest"]["manifest_hash"].as_str().unwrap().len() == 64);
}

#[test]
fn milnor_depth_one() {
    let (out, _d) = run(&["eval", "milnor", "--r", "1", "--z", "1"]);
    assert!(out.status.success());
    let want = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    assert!((value_re(&json(&out)) - want).abs() < 1e-12);
}

#[test]
fn det_plus_is_closed_form() {
    let (out, _d) = run(&["eval", "det-plus", "--z", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["method"], "closed-form");
    assert!(value_re(&v) > 0.0);
    assert!(v["result"]["abs_error"].as_f64().unwrap() > 0.0);
    let (out, _d) = run(&["eval", "det-plus", "--z", "3", "--path", "superzeta"]);
    let w = json(&out);
    assert_eq!(w["result"]["method"], "superzeta-derivative");
    assert!((value_re(&w) / value_re(&v) - 1.0).abs() < 1e-6);
}

#[test]
fn complex_argument_forms_agree() {
    let a = json(&run(&["eval", "zeta-h", "--s", "2.5,-1", "--z", "1.5"]).0);
    let b = json(&run(&["eval", "zeta-h", "--s", "2.5-1i", "--z", "1.5"]).0);
    assert_eq!(a["result"], b["result"]);
}

#[test]
fn table_build_contains_ab() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "table",
            "build",
            "--group",
            "gamma2",
            "--max-norm",
            "35",
            "--out",
            "t.csv",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let summary = json(&out);
    assert_eq!(summary["classes"], 6);
    let text = std::fs::read_to_string(dir.path().join("t.csv")).unwrap();
    let want = 17.0 + 12.0 * 2f64.sqrt();
    let row = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').collect::<Vec<_>>())
        .find(|f| f[0] == "6")
        .expect("trace 6 row");
    assert!((row[1].parse::<f64>().unwrap() - want).abs() < 1e-12);
    // AB and its inverse among the six classes of trace 6
    assert!(row[3].parse::<u64>().unwrap() >= 2);
}

#[test]
fn table_build_below_smallest_norm_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["table", "build", "--max-norm", "1.5", "--out", "t.csv"],
    );
    assert!(out.status.success());
    assert_eq!(json(&out)["classes"], 0);
    let text = std::fs::read_to_string(dir.path().join("t.csv")).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1);
}

#[test]
fn table_rebuild_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.csv", "b.csv"] {
        let out = run_in(
            dir.path(),
            &["table", "build", "--max-norm", "2000", "--out", name],
        );
        assert!(out.status.success());
    }
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn table_build_needs_out() {
    let (out, _d) = run(&["table", "build", "--max-norm", "35"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_voros_passes() {
    let (out, _d) = run(&["check", "voros"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["summary"]["failed"], 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS voros/g1-continuation"));
}

#[test]
fn check_determinants_missing_table() {
    let (out, _d) = run(&["check", "determinants", "--table", "no-such-table.csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "setup");
}

#[test]
fn check_all_with_tolerance_override() {
    let (out, _d) = run(&["check", "all", "--tol", "1e-6"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["tol"].as_f64(), Some(1e-6));
    }
    for suite in ["special", "voros", "surface", "determinants"] {
        assert!(v["summary"]["max_error"][suite].is_number());
    }
}

#[test]
fn impossible_tolerance_fails_with_exit_1() {
    let (out, _d) = run(&["check", "special", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL special/"));
}

#[test]
fn unknown_function_is_usage_error() {
    let (out, _d) = run(&["eval", "frobnicate", "--z", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "usage");
}

#[test]
fn domain_violation_exits_3() {
    let (out, _d) = run(&["eval", "det-minus", "--z", "0.5"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["error"]["kind"], "numeric-domain");
}

#[test]
fn grid_csv_has_header_and_input_order() {
    let (out, _d) = run(&[
        "--format",
        "csv",
        "eval",
        "zeta-h",
        "--s",
        "3",
        "--grid-re",
        "1:2:3",
        "--grid-im",
        "-1:1:2",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# manifest: {"));
    assert_eq!(
        lines.next().unwrap(),
        "s_re,s_im,z_re,z_im,value_re,value_im,abs_error,method"
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').take(7).map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 6);
    let zs: Vec<(f64, f64)> = rows.iter().map(|r| (r[2], r[3])).collect();
    assert_eq!(
        zs,
        vec![
            (1.0, -1.0),
            (1.0, 1.0),
            (1.5, -1.0),
            (1.5, 1.0),
            (2.0, -1.0),
            (2.0, 1.0)
        ]
    );
    assert!(!text.contains('\r'));
}

#[test]
fn grid_output_is_deterministic_across_thread_counts() {
    let args = [
        "--format",
        "csv",
        "eval",
        "barnes",
        "--grid-re",
        "0.5:4:7",
        "--grid-im",
        "-1:1:3",
    ];
    let (a, _d) = run(&[&["--threads", "1"][..], &args[..]].concat());
    let (b, _d) = run(&[&["--threads", "3"][..], &args[..]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_discovery_order() {
    let dir = tempfile::tempdir().unwrap();
    let shipped = shipped_config();
    // builtin fallback
    let out = run_in(dir.path(), &["eval", "phi", "--s", "2"]);
    let builtin = json(&out);
    assert_eq!(builtin["manifest"]["config"], "builtin:reference-gamma2");

    // environment variable
    let out = Command::new(bin())
        .args(["eval", "phi", "--s", "2"])
        .current_dir(dir.path())
        .env("SUPERZETA_CONFIG", &shipped)
        .output()
        .unwrap();
    let from_env = json(&out);
    assert_eq!(
        from_env["manifest"]["config"],
        shipped.display().to_string()
    );
    assert_eq!(
        from_env["result"]["value_re"],
        builtin["result"]["value_re"]
    );

    // ./superzeta.json, overridden by the flag
    let mut cfg: Value = serde_json::from_str(&std::fs::read_to_string(&shipped).unwrap()).unwrap();
    cfg["c2"] = serde_json::json!(0.3);
    std::fs::write(dir.path().join("superzeta.json"), cfg.to_string()).unwrap();
    let local = json(&run_in(dir.path(), &["eval", "phi", "--s", "2"]));
    assert_eq!(local["manifest"]["config"], "superzeta.json");
    let ratio = local["result"]["value_re"].as_f64().unwrap()
        / builtin["result"]["value_re"].as_f64().unwrap();
    assert!((ratio - 0.2f64.exp()).abs() < 1e-13);
    let flag = json(&run_in(
        dir.path(),
        &[
            "--config",
            shipped.to_str().unwrap(),
            "eval",
            "phi",
            "--s",
            "2",
        ],
    ));
    assert_eq!(flag["result"]["value_re"], builtin["result"]["value_re"]);
}

#[test]
fn bad_config_is_setup_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("superzeta.json"), "{\"genus\": 0}").unwrap();
    let out = run_in(dir.path(), &["eval", "phi", "--s", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_file_round_trip_matches_in_memory() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["table", "build", "--max-norm", "10000", "--out", "t.csv"],
    );
    assert!(out.status.success());
    let a = json(&run_in(dir.path(), &["eval", "selberg", "--s", "2.5"]));
    let b = json(&run_in(
        dir.path(),
        &["--table", "t.csv", "eval", "selberg", "--s", "2.5"],
    ));
    assert_eq!(a["result"]["value_re"], b["result"]["value_re"]);
    assert_eq!(
        a["manifest"]["input_hashes"]["table"],
        b["manifest"]["input_hashes"]["table"]
    );
}

#[test]
fn output_file_and_manifest_hash_stability() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "--out",
        "r.json",
        "eval",
        "det-depth",
        "--r",
        "2",
        "--z",
        "3",
    ];
    assert!(run_in(dir.path(), &args).status.success());
    let first = std::fs::read(dir.path().join("r.json")).unwrap();
    assert!(run_in(dir.path(), &args).status.success());
    let second = std::fs::read(dir.path().join("r.json")).unwrap();
    assert_eq!(first, second);
    let v: Value = serde_json::from_slice(&first).unwrap();
    assert!(v["result"]["extra"]["path_disagreement"].as_f64().unwrap() < 1e-6);
}

#[test]
fn det_star_needs_positive_derivative() {
    let (out, _d) = run(&["eval", "det-star", "--zprime", "-1"]);
    assert_eq!(out.status.code(), Some(3));
    let (out, _d) = run(&["eval", "det-star", "--zprime", "2"]);
    assert!(out.status.success());
}
