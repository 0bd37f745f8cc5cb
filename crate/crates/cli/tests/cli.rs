use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use imexp_core::hyperseries::{ParamSet, SeriesControl};
use imexp_core::incexp::e_lower;
use imexp_core::matspecial::{gamma_matrix_inverse, lower_incomplete_gamma_matrix};
use imexp_core::matcore::relative_residual;
use imexp_core::verify::SUITES;
use imexp_core::{CMatrix, Complex64};
use serde_json::Value;

/// Commuting family: B, E and F are polynomials in A.
const PARAMS: &str = r#"{
  "A": {"r": 2, "entries": [[[1.3, 0.1], [0.2, -0.1]], [[0.1, 0.0], [0.8, 0.0]]]},
  "B": {"r": 2, "entries": [[[1.55, 0.05], [0.1, -0.05]], [[0.05, 0.0], [1.3, 0.0]]]},
  "E": [{"r": 2, "entries": [[[1.27, 0.125], [0.243, -0.119]], [[0.121, 0.001], [0.666, -0.001]]]}],
  "F": [{"r": 2, "entries": [[[1.85, 0.05], [0.1, -0.05]], [[0.05, 0.0], [1.6, 0.0]]]}]
}"#;

fn imexp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_imexp")).args(args).env_remove("IMEXP_SEED").output().unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("imexp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn params_file() -> PathBuf {
    scratch("params.json", PARAMS)
}

fn params() -> ParamSet {
    serde_json::from_str(PARAMS).unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn value_of(doc: &Value) -> CMatrix {
    serde_json::from_value(doc["value"].clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn eval_matches_the_library_bit_for_bit() {
    let file = params_file();
    let doc = stdout_json(&imexp(&["eval", "--function", "e-lower", "--x", "1.0", "--t", "0.5", "--params", p(&file)]));
    let ctrl = SeriesControl { tol: 1e-14, max_terms: 5000, stall_window: 5 };
    let want = e_lower(1.0, Complex64::new(0.5, 0.0), params().a.as_ref().unwrap(), &ctrl).unwrap();
    assert_eq!(value_of(&doc), want.value);
    assert_eq!(doc["terms_used"].as_u64(), Some(want.terms_used as u64));
    assert!(doc["est_error"].as_f64().unwrap() <= 1e-13);
}

#[test]
fn emitted_matrices_reparse_identically() {
    let file = params_file();
    let out = imexp(&["eval", "--function", "gen-upper", "--x", "1.1", "--v", "0.6+0.1i", "--params", p(&file)]);
    let doc = stdout_json(&out);
    let m = value_of(&doc);
    let again: CMatrix = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
    assert_eq!(again, m);
    for (x, y) in m.as_slice().iter().zip(again.as_slice()) {
        assert_eq!(x.re.to_bits(), y.re.to_bits());
        assert_eq!(x.im.to_bits(), y.im.to_bits());
    }
}

#[test]
fn zero_argument_gives_the_regularized_lower_gamma() {
    let file = params_file();
    let doc = stdout_json(&imexp(&["eval", "--function", "e-lower", "--x", "1.5", "--t", "0", "--params", p(&file)]));
    let a = params().a.unwrap();
    let want = &gamma_matrix_inverse(&a).unwrap() * &lower_incomplete_gamma_matrix(&a, 1.5).unwrap();
    assert!(relative_residual(&value_of(&doc), &want) <= 1e-12);
}

#[test]
fn engines_agree() {
    let file = params_file();
    for (function, arg) in [("e-upper", "0.4-0.3i"), ("hyp-e-lower", "0.5+0.2i"), ("gen-upper", "-0.6+0.1i"), ("gen-lower", "0.7")] {
        let run = |engine: &str| {
            value_of(&stdout_json(&imexp(&[
                "eval", "--function", function, "--x", "1.3", "--t", arg, "--engine", engine, "--params", p(&file),
            ])))
        };
        let (s, q) = (run("series"), run("quadrature"));
        assert!(relative_residual(&s, &q) <= 1e-7, "{function}: {:e}", relative_residual(&s, &q));
    }
}

#[test]
fn input_errors_exit_2() {
    let file = params_file();
    let ragged = scratch("ragged.json", r#"{"A": {"r": 2, "entries": [[[1, 0]]]}}"#);
    let not_json = scratch("garbage.json", "{ nope");
    // Two numerators and no denominator: the upper series needs |v| < 1.
    let divergent = scratch(
        "divergent.json",
        r#"{"A": {"r": 1, "entries": [[[1, 0]]]}, "B": {"r": 1, "entries": [[[1, 0]]]},
            "E": [{"r": 1, "entries": [[[0.5, 0]]]}, {"r": 1, "entries": [[[0.7, 0]]]}]}"#,
    );
    let cases: Vec<Vec<&str>> = vec![
        vec!["eval", "--function", "gamma", "--params", p(&ragged)],
        vec!["eval", "--function", "gamma", "--params", p(&not_json)],
        vec!["eval", "--function", "gamma", "--params", "/nonexistent/params.json"],
        vec!["eval", "--function", "e-lower", "--t", "0.5", "--params", p(&file)],
        vec!["eval", "--function", "e-lower", "--x", "1", "--t", "1+2j", "--params", p(&file)],
        vec!["eval", "--function", "e-lower", "--x", "nan", "--params", p(&file)],
        vec!["eval", "--function", "no-such-function", "--params", p(&file)],
        vec!["eval", "--function", "gamma", "--engine", "quadrature", "--params", p(&file)],
        vec!["eval", "--function", "gauss-upper", "--x", "1", "--z", "0.5", "--params", p(&file)],
        vec!["eval", "--function", "gen-upper", "--x", "1", "--v", "1.5", "--params", p(&divergent)],
        vec!["verify", "--suite", "no_such_suite"],
        vec!["verify", "--suite", "recurrence", "--dims", "0"],
        vec!["verify", "--format", "xml"],
    ];
    for args in cases {
        let out = imexp(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn truncated_series_exit_3() {
    let file = params_file();
    let out = imexp(&["eval", "--function", "gen-upper", "--x", "1", "--v", "0.8", "--max-terms", "4", "--params", p(&file)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("did not converge"));
}

fn strip_runtime(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("runtime_ms");
            map.values_mut().for_each(strip_runtime);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_runtime),
        _ => {}
    }
}

#[test]
fn verify_reports_are_reproducible_apart_from_runtimes() {
    let args = ["verify", "--suite", "decompositions,recurrence", "--dims", "1,2", "--trials", "3", "--seed", "7"];
    let mut first = stdout_json(&imexp(&args));
    let mut second = stdout_json(&imexp(&args));
    strip_runtime(&mut first);
    strip_runtime(&mut second);
    assert_eq!(serde_json::to_string(&first).unwrap(), serde_json::to_string(&second).unwrap());
    let names: Vec<&str> = first["suites"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap()).collect();
    assert_eq!(names, ["decompositions", "recurrence"]);
    assert_eq!(first["config"]["seed"], 7);
    assert_eq!(first["summary"]["failed"], 0);
}

#[test]
fn seed_defaults_from_the_environment() {
    let report = scratch("env-report.json", "");
    let out = Command::new(env!("CARGO_BIN_EXE_imexp"))
        .args(["verify", "--suite", "recurrence", "--dims", "1", "--trials", "2", "--report", p(&report)])
        .env("IMEXP_SEED", "1234")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["config"]["seed"], 1234);
    assert!(doc["suites"][0]["cases"].as_array().unwrap().iter().all(|c| c["seed"] == 1234));
}

#[test]
fn csv_has_one_row_per_case() {
    let out = imexp(&["verify", "--suite", "recurrence", "--dims", "1,2", "--trials", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("suite,case_id,check,seed,dimension"));
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.starts_with("recurrence,")));
}

#[test]
fn list_suites_matches_the_registry() {
    let out = imexp(&["list-suites"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let headers: Vec<&str> = text.lines().filter(|l| !l.starts_with(' ')).map(|l| l.split(':').next().unwrap()).collect();
    let registry: Vec<&str> = SUITES.iter().map(|s| s.name).collect();
    assert_eq!(headers, registry);
    assert!(text.contains("gauss_value: "));
    assert!(!text.contains("Theorem") && !text.contains("Corollary") && !text.contains("Eq."));
    assert_eq!(text, String::from_utf8(imexp(&["list-suites"]).stdout).unwrap());
}
