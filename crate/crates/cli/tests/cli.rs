use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn swanson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swanson")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8 diagnostics")
}

fn schema_validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid_report(text: &str) -> Value {
    let v: Value = serde_json::from_str(text).expect("valid JSON");
    let validator = schema_validator();
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
    let all_pass = v["checks"].as_array().unwrap().iter().all(|c| c["pass"].as_bool().unwrap());
    assert_eq!(v["pass"].as_bool().unwrap(), all_pass);
    v
}

#[test]
fn plain_spectrum_table() {
    let o = swanson(&["spectrum", "--omega", "1", "--alpha", "0", "--beta", "0", "--levels", "4"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,E_numeric,E_exact,abs_err,rel_err"));
    let exact: Vec<f64> = lines.map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert_eq!(exact, [1.0, 2.0, 3.0, 4.0]);
    assert!(!text.contains('\r'));
}

#[test]
fn extended_spectrum_starts_at_the_seed_energy() {
    let o = swanson(&["spectrum", "--omega", "2", "--alpha", "0.5", "--beta", "0.25", "--m", "2", "--levels", "6"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let first = stdout(&o).lines().nth(1).unwrap().to_string();
    let exact: f64 = first.split(',').nth(2).unwrap().parse().unwrap();
    let omega = 3.5f64.sqrt();
    assert!((exact - (1.0 - 5.0 * omega / 2.0)).abs() < 1e-10, "{first}");
}

#[test]
fn invalid_parameters_exit_2_naming_the_invariant() {
    let o = swanson(&["spectrum", "--omega", "1", "--alpha", "1", "--beta", "1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("omega - alpha - beta > 0"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    for args in [
        vec!["spectrum", "--grid-n", "2000"],
        vec!["spectrum", "--tol", "0"],
        vec!["spectrum", "--tol", "-1e-3"],
        vec!["spectrum", "--grid-l", "nan"],
        vec!["spectrum", "--omega", "abc"],
        vec!["spectrum", "--levels", "0"],
        vec!["spectrum", "--bogus"],
        vec!["verify", "--m", "3"],
        vec!["verify", "--suite", "everything"],
        vec![],
    ] {
        let o = swanson(&args);
        assert_eq!(code(&o), 2, "{args:?}");
    }
}

#[test]
fn potential_samples() {
    let o = swanson(&["potential", "--m", "2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("z,V\n"));
    assert!(text.lines().any(|l| l == "0,-10"), "no z = 0 row");
    assert_eq!(text.lines().count(), 2002);

    let o = swanson(&["potential", "--m", "0", "--grid-n", "21"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("# "));
    assert!(text.lines().any(|l| l == "-10,100"));

    assert_eq!(code(&swanson(&["potential", "--m", "3"])), 2);
}

#[test]
fn check_expressions() {
    let o = swanson(&["check", "[hplus, L] + twoOverJ*L"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = swanson(&["check", "hplus' - hplus"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = swanson(&["check", "hplus - hminus"]);
    assert_eq!(code(&o), 1);

    let o = swanson(&["check", "[hplus, L"]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("unbalanced bracket at offset 9 (opened at offset 0)"), "{err}");
    assert!(err.contains("         ^"), "{err}");

    for bad in ["", "2/J", "nosuch + L", "omega*J", "L^17", "(((", "hplus @ L"] {
        let o = swanson(&["check", bad]);
        assert_eq!(code(&o), 2, "{bad:?}");
        assert!(!stderr(&o).contains("panicked"), "{bad:?}");
    }
}

#[test]
fn verify_suites() {
    let o = swanson(&["verify", "--suite", "ladder", "--tol", "1e-12"]);
    assert_eq!(code(&o), 1);

    let o = swanson(&["verify", "--suite", "pseudo", "--alpha", "0.3", "--beta", "0.3", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v = assert_valid_report(&stdout(&o));
    for c in v["checks"].as_array().unwrap() {
        assert!(c["residual"].as_f64().unwrap() <= 1e-12, "{c}");
    }

    let o = swanson(&["verify", "--format", "json"]);
    let v = assert_valid_report(&stdout(&o));
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    let prefixes: Vec<&str> = names.iter().map(|n| n.split(':').next().unwrap()).collect();
    let mut sorted = prefixes.clone();
    sorted.sort();
    assert_eq!(prefixes, sorted);
    assert!(prefixes.contains(&"susy") && prefixes.contains(&"intertwine"));
    assert_eq!(code(&o), if v["pass"].as_bool().unwrap() { 0 } else { 1 });
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["verify", "--format", "json"],
        vec!["verify"],
        vec!["spectrum", "--m", "4", "--format", "json"],
        vec!["check", "LdagL - (J*hplus - JomegaHalf + JE - one)", "--format", "json"],
    ] {
        let a = swanson(&args);
        let b = swanson(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.contains(&b'\r'));
    }
}

#[test]
fn json_reports_validate_against_the_schema() {
    for args in [
        vec!["spectrum", "--format", "json"],
        vec!["potential", "--m", "0", "--format", "json"],
        vec!["check", "[hplus, L] + twoOverJ*L", "--format", "json"],
        vec!["verify", "--suite", "susy", "--format", "json"],
    ] {
        let o = swanson(&args);
        assert!(code(&o) <= 1, "{args:?}: {}", stderr(&o));
        let v = assert_valid_report(&stdout(&o));
        assert_eq!(v["env"]["command"], args[0]);
    }
}

#[test]
fn config_file_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    fs::write(&path, r#"{"omega": 1, "alpha": 0, "beta": 0, "levels": 3, "format": "json", "tol": 0.5}"#).unwrap();
    let p = path.to_str().unwrap();

    let o = swanson(&["spectrum", "--config", p]);
    assert_eq!(code(&o), 0);
    let v = assert_valid_report(&stdout(&o));
    assert_eq!(v["env"]["omega"], 1.0);
    assert_eq!(v["env"]["tol"], 0.5);
    assert_eq!(v["spectra"][0]["rows"].as_array().unwrap().len(), 3);

    let o = swanson(&["spectrum", "--config", p, "--omega", "3", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.lines().nth(1).unwrap().split(',').nth(2).unwrap() == "3");

    fs::write(&path, r#"{"omgea": 1}"#).unwrap();
    assert_eq!(code(&swanson(&["spectrum", "--config", p])), 2);
    fs::write(&path, "not json").unwrap();
    assert_eq!(code(&swanson(&["spectrum", "--config", p])), 2);
    assert_eq!(code(&swanson(&["spectrum", "--config", "/nonexistent/run.json"])), 2);
}

#[test]
fn twodim_controls() {
    assert_eq!(code(&swanson(&["twodim", "--n1", "1"])), 2);
    assert_eq!(code(&swanson(&["twodim", "--n1", "0", "--n2", "1"])), 2);

    let plain = ["--omega", "2", "--alpha", "0", "--beta", "0", "--omega2", "1", "--grid-n", "1001", "--levels", "30"];
    let mut args = vec!["twodim", "--n1", "1", "--n2", "1", "--expect-fail", "--format", "json"];
    args.extend(plain);
    let o = swanson(&args);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v = assert_valid_report(&stdout(&o));
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);

    let mut args = vec!["twodim", "--n1", "1", "--n2", "2", "--format", "json"];
    args.extend(plain);
    let o = swanson(&args);
    let v = assert_valid_report(&stdout(&o));
    let check = |prefix: &str| -> bool {
        v["checks"].as_array().unwrap().iter().find(|c| c["name"].as_str().unwrap().starts_with(prefix)).unwrap()
            ["pass"]
            .as_bool()
            .unwrap()
    };
    assert!(check("constraint mismatch"));
    assert!(check("negative control (n1, n2) = (1, 3)"));
    assert!(check("independence witness"));
    assert!(check("I+ is the adjoint"));
    let map = &v["spectra"][0];
    assert_eq!(map["name"], "degeneracy");
    // energies 3 + 2n + k: level 5 holds (0, 2) and (1, 0)
    let rows = map["rows"].as_array().unwrap();
    assert_eq!(rows[2][1], 2.0);
    assert_eq!(code(&o), if v["pass"].as_bool().unwrap() { 0 } else { 1 });
}
