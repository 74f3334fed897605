use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

const BUNDLED: &str = include_str!("../../core/data/paper_example.json");

fn hol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hol")).args(args).env_remove("HOL_SEED").output().expect("hol runs")
}

fn hol_env(args: &[&str], seed: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hol")).args(args).env("HOL_SEED", seed).output().expect("hol runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn field_factor_eisenstein_prime() {
    let o = hol(&["field", "factor", "--poly", "2,0,-16,0,20,0,-8,0,1", "--prime", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("1 prime(s) above 2"));
    assert!(stdout(&o).contains("e=8, f=1"));
}

#[test]
fn field_factor_index_divisor() {
    let o = hol(&["field", "factor", "--poly", "167,-229,1,1", "--prime", "2"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("IndexDivisor"));
}

#[test]
fn field_info_quadratic() {
    let o = hol(&["field", "info", "--poly", "-2,0,1"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("degree: 2"));
    assert!(s.contains("signature: (2,0)"));
    assert!(s.contains("discriminant: 8"));
}

#[test]
fn field_malformed_input() {
    assert_eq!(code(&hol(&["field", "info", "--poly", "1,x"])), 2);
    assert_eq!(code(&hol(&["field", "info", "--poly", "-1,0,1"])), 2);
    assert_eq!(code(&hol(&["field", "factor", "--poly", "-2,0,1", "--prime", "4"])), 2);
    assert_eq!(code(&hol(&["field"])), 2);
}

#[test]
fn orbits_analyze_bundled() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "d.json", BUNDLED);
    let out = dir.path().join("r.json");
    let o = hol(&["orbits", "analyze", "--input", &input, "--report", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = read_json(&out);
    assert_eq!(r["status"], "PASS");
    assert_eq!(r["genus"], json!({"total": 40, "quotient": 16}));
    let stab: Vec<u64> = r["phi"].as_array().unwrap().iter().map(|p| p["stabilizer_order"].as_u64().unwrap()).collect();
    assert_eq!(stab, [4, 4, 4, 4, 8]);
    let k: Vec<u64> = r["phi"].as_array().unwrap().iter().map(|p| p["fixed_field_degree"].as_u64().unwrap()).collect();
    assert_eq!(k, [1, 1, 1, 1, 3]);

    let again = dir.path().join("r2.json");
    hol(&["orbits", "analyze", "--input", &input, "--report", again.to_str().unwrap()]);
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn orbits_analyze_corrupted_identity() {
    let mut d: Value = serde_json::from_str(BUNDLED).unwrap();
    d["identities"][0]["to"] = json!("f");
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "d.json", &d.to_string());
    let o = hol(&["orbits", "analyze", "--input", &input]);
    assert_eq!(code(&o), 1);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["status"], "FAIL");
}

#[test]
fn orbits_analyze_schema_errors() {
    let dir = TempDir::new().unwrap();
    let mut d: Value = serde_json::from_str(BUNDLED).unwrap();
    d.as_object_mut().unwrap().remove("base_field");
    let input = write(&dir, "d.json", &d.to_string());
    assert_eq!(code(&hol(&["orbits", "analyze", "--input", &input])), 2);
    let garbage = write(&dir, "g.json", "{not json");
    assert_eq!(code(&hol(&["orbits", "analyze", "--input", &garbage])), 2);
    let missing = dir.path().join("absent.json");
    assert_eq!(code(&hol(&["orbits", "analyze", "--input", missing.to_str().unwrap()])), 2);
}

/// One record over `Q(sqrt 2)` whose eigenvalue at a prime depends only on
/// the rational prime below it.
fn base_change_dataset() -> Value {
    let d: Value = serde_json::from_str(BUNDLED).unwrap();
    let mut eigen = serde_json::Map::new();
    for label in d["constituents"][0]["eigenvalues"].as_object().unwrap().keys() {
        let p = label.split('.').next().unwrap();
        eigen.insert(label.clone(), json!({"coords": [p, "1"]}));
    }
    json!({
        "base_field": d["base_field"],
        "galois_generators": d["galois_generators"],
        "supported_primes": d["supported_primes"],
        "identities": [{"from": "b", "to": "b", "sigma_word": "sigma", "tau_image": null}],
        "constituents": [{
            "label": "b",
            "dim": 2,
            "atkin_lehner": -1,
            "coeff_field": {"poly": [-2, 0, 1]},
            "aut_generators": [{"image": {"coords": ["0", "-1"]}}],
            "eigenvalues": eigen,
        }],
    })
}

#[test]
fn orbits_analyze_single_invariant_record() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "d.json", &base_change_dataset().to_string());
    let o = hol(&["orbits", "analyze", "--input", &input]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["base_change"]["b"], json!(true));
    assert_eq!(r["phi"][0]["delta_order"], json!(1));
}

#[test]
fn certify_consistent_and_contradicted() {
    let dir = TempDir::new().unwrap();
    let quad = write(&dir, "q.txt", "-2,0,1");
    let o = hol(&["certify", "--poly-file", &quad, "--group", "cyclic:2", "--max-prime", "1000"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let trinomial = write(&dir, "t.json", &json!({"poly": [-1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]}).to_string());
    let out = dir.path().join("c.json");
    let o = hol(&[
        "certify", "--poly-file", &trinomial, "--group", "frobenius:17", "--max-prime", "10000", "--report",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    assert_eq!(read_json(&out)["verdict"], "CONTRADICTED");
}

#[test]
fn certify_malformed_input() {
    let dir = TempDir::new().unwrap();
    let quad = write(&dir, "q.txt", "-2,0,1");
    assert_eq!(code(&hol(&["certify", "--poly-file", &quad, "--group", "klein:4"])), 2);
    assert_eq!(code(&hol(&["certify", "--poly-file", &quad, "--group", "frobenius:17", "--max-prime", "100"])), 2);
    let bad = write(&dir, "b.txt", "one,two");
    assert_eq!(code(&hol(&["certify", "--poly-file", &bad, "--group", "cyclic:2"])), 2);
}

#[test]
fn seed_from_environment() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("r.json");
    let o = hol_env(&["paper-verify", "--section", "orbits", "--seed", "3", "--report", out.to_str().unwrap()], "7");
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(read_json(&out)["seed"], json!(7));
    assert_eq!(code(&hol_env(&["paper-verify", "--section", "orbits"], "seven")), 2);
}

#[test]
fn verify_command_sections() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("r.json");
    let o = hol(&["paper-verify", "--section", "orbits", "--report", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let r = read_json(&out);
    assert_eq!(r["summary"]["fail"], json!(0));
    assert_eq!(r["summary"]["asserted"], json!(2));
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["status"] != "SKIP"));

    // The tabulated automorphism of the second quartic field does not verify.
    let o = hol(&["paper-verify", "--section", "fields"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("[FAIL] tau_g_order_4"));
    assert!(stdout(&o).contains("[PASS] tau_g_repaired_order_4"));

    assert_eq!(code(&hol(&["paper-verify", "--section", "nothing"])), 2);
}

#[test]
fn verify_command_f17_report_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let args = |p: &Path| vec!["paper-verify".to_string(), "--section".into(), "f17".into(), "--max-prime".into(), "20000".into(), "--report".into(), p.to_str().unwrap().into()];
    let run = |p: &Path| {
        let v = args(p);
        hol(&v.iter().map(String::as_str).collect::<Vec<_>>())
    };
    let o = run(&a);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("[FAIL] f17_closure_square_multiplier"));
    assert!(stdout(&o).contains("[PASS] f17_certification"));
    run(&b);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn dataset_generate_matches_bundled() {
    let o = hol(&["dataset", "generate"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), BUNDLED);
}
