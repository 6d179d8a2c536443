use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn subent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subent")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = subent(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn eos_min_worked_examples() {
    let bell = fixture("bell-line.json");
    let r = report(&["eos-min", "--subspace", path_str(&bell), "--seed", "1"]);
    assert_eq!(r["results"]["eos"]["certificate"], "EXACT_MAXENT");
    assert!((r["results"]["eos"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let ab = fixture("ab-span.json");
    let r = report(&["eos-min", "--subspace", path_str(&ab), "--seed", "1"]);
    assert_eq!(r["results"]["eos"]["certificate"], "CONTAINS_PRODUCT");
    assert!(r["results"]["eos"]["value"].as_f64().unwrap() <= 1e-7);

    let anti = fixture("antisymmetric.json");
    let r = report(&["eos-min", "--subspace", path_str(&anti), "--seed", "1", "--restarts", "16"]);
    assert!((r["results"]["eos"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-6);
}

#[test]
fn seed_is_mandatory_for_stochastic_commands() {
    let bell = fixture("bell-line.json");
    assert_eq!(subent(&["eos-min", "--subspace", path_str(&bell)]).status.code(), Some(2));
    assert_eq!(subent(&["random", "avg-ent", "--da", "2", "--db", "2", "--samples", "10"]).status.code(), Some(2));
}

#[test]
fn malformed_files_exit_with_parse_code() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"dims\": [2, 2], \"vectors\": [[[1, 0]]]}").unwrap();
    assert_eq!(subent(&["eos-min", "--subspace", path_str(&bad), "--seed", "0"]).status.code(), Some(2));
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(subent(&["maxent", "verify", "--subspace", path_str(&bad)]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(subent(&["maxent", "verify", "--subspace", path_str(&missing)]).status.code(), Some(1));
}

#[test]
fn maxent_construct_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("w.json");
    let r = report(&["maxent", "construct", "--da", "4", "--db", "2", "--dim", "2", "-o", path_str(&file)]);
    assert_eq!(r["verdict"], "pass");
    let v = report(&["maxent", "verify", "--subspace", path_str(&file)]);
    assert_eq!(v["verdict"], "pass");
    assert!(v["results"]["gram"]["gram_residual"].as_f64().unwrap() < 1e-12);

    let swapped = dir.path().join("s.json");
    let r = report(&["maxent", "construct", "--dA", "2", "--dB", "4", "--dim", "2", "-o", path_str(&swapped)]);
    assert_eq!(r["results"]["swapped"], true);
    assert_eq!(report(&["maxent", "verify", "--subspace", path_str(&swapped)])["verdict"], "pass");

    assert_eq!(subent(&["maxent", "construct", "--da", "5", "--db", "2", "--dim", "3"]).status.code(), Some(3));
}

#[test]
fn random_subspace_fails_verification_with_residual() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("r.json");
    report(&["random", "subspace", "--dim", "9", "--d", "3", "--seed", "4", "-o", path_str(&file)]);
    let v = report(&["maxent", "verify", "--subspace", path_str(&file)]);
    assert_eq!(v["verdict"], "fail");
    assert!(v["results"]["gram"]["gram_residual"].as_f64().unwrap() > 1e-3);
    assert_eq!(v["config"]["shape"]["da"], 3);
}

#[test]
fn random_pipeline_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for f in [&a, &b] {
        report(&["random", "subspace", "--dim", "9", "--d", "3", "--seed", "11", "-o", path_str(f)]);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let args = ["eos-min", "--subspace", path_str(&a), "--seed", "2", "--restarts", "8"];
    assert_eq!(subent(&args).stdout, subent(&args).stdout);
    assert_eq!(subent(&["random", "subspace", "--dim", "4", "--d", "5", "--seed", "1", "-o", path_str(&a)]).status.code(), Some(1));
}

#[test]
fn written_files_round_trip_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.json");
    report(&["random", "subspace", "--dim", "12", "--d", "2", "--da", "3", "--seed", "5", "-o", path_str(&first)]);
    let text = std::fs::read_to_string(&first).unwrap();
    let parsed: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", text);
}

#[test]
fn code_commands() {
    let r = report(&["code", "bounds", "--n", "5", "--l", "1", "--k", "1"]);
    assert_eq!((r["results"]["hamming_lhs"].as_u64(), r["results"]["hamming_rhs"].as_u64()), (Some(16), Some(16)));
    assert_eq!(r["results"]["singleton_ok"], true);
    let r = report(&["code", "bounds", "--n", "4", "--l", "1", "--k", "1"]);
    assert_eq!(r["verdict"], "fail");

    let five = fixture("five-qubit.json");
    let r = report(&["code", "totally-entangled", "--subspace", path_str(&five), "--k", "2"]);
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["results"]["cuts_checked"], 10);

    let r = report(&["code", "build-verify", "--subspace", path_str(&five), "--k", "1", "--trials", "5", "--seed", "3"]);
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["results"]["syndrome_spaces"], 16);
    assert_eq!(r["results"]["total_dim"], 32);
    assert_eq!(r["results"]["verification"]["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn code_precondition_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bell = dir.path().join("bell.json");
    std::fs::write(
        &bell,
        r#"{"n": 2, "vectors": [[[0.7071067811865476, 0], [0, 0], [0, 0], [0.7071067811865476, 0]]]}"#,
    )
    .unwrap();
    let args = ["code", "build-verify", "--subspace", path_str(&bell), "--k", "1", "--seed", "0"];
    assert_eq!(subent(&args).status.code(), Some(4));

    let shor = fixture("shor-v0.json");
    let args = ["code", "build-verify", "--subspace", path_str(&shor), "--k", "1", "--seed", "0"];
    assert_eq!(subent(&args).status.code(), Some(5));

    let r = report(&["code", "totally-entangled", "--subspace", path_str(&shor), "--k", "1"]);
    assert_eq!(r["verdict"], "pass");
    let r = report(&["code", "totally-entangled", "--subspace", path_str(&shor), "--k", "2"]);
    assert_eq!(r["verdict"], "fail");
}

#[test]
fn shor_commands() {
    let r = report(&["shor", "survey", "--restarts", "8"]);
    assert_eq!(r["verdict"], "pass");
    let entries = r["results"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 36);
    let near = |x: f64| entries.iter().filter(|e| (e["eos"].as_f64().unwrap() - x).abs() < 1e-7).count();
    assert_eq!((near(2.0), near(1.0)), (27, 9));

    let r = report(&["shor", "demo", "--pauli", "2", "--qubit", "5", "--seed", "7"]);
    assert_eq!(r["results"]["outcome"]["syndrome"], 9);
    assert!((r["results"]["outcome"]["fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let r = report(&["shor", "containment"]);
    assert_eq!(r["results"]["rows"].as_array().unwrap().len(), 27);
    assert!(r["results"]["max_residual"].as_f64().unwrap() < 1e-12);

    assert_eq!(subent(&["shor", "demo", "--pauli", "2", "--qubit", "9", "--seed", "0"]).status.code(), Some(2));
    assert_eq!(subent(&["shor", "demo", "--pauli", "4", "--qubit", "0", "--seed", "0"]).status.code(), Some(2));
}

#[test]
fn average_entanglement_commands() {
    let r = report(&["random", "avg-ent", "--da", "1", "--db", "4", "--samples", "100", "--seed", "0"]);
    assert_eq!(r["results"]["mean"], 0.0);
    let r = report(&["random", "avg-ent", "--da", "2", "--db", "2", "--samples", "20000", "--seed", "0"]);
    let mean = r["results"]["mean"].as_f64().unwrap();
    let stderr = r["results"]["stderr"].as_f64().unwrap();
    let exact = r["results"]["page_exact"].as_f64().unwrap();
    assert!((mean - exact).abs() < 3.0 * stderr);
}

#[test]
fn report_goes_to_out_file_and_threads_flag_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = subent(&["--threads", "1", "--out", path_str(&out), "code", "bounds", "--n", "9", "--l", "1", "--k", "1"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["results"]["hamming_rhs"], 256);
}

#[test]
fn fixture_command_matches_checked_in_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["bell-line", "ab-span", "antisymmetric", "five-qubit", "six-qubit", "shor-v0"] {
        let file = dir.path().join(format!("{name}.json"));
        report(&["fixture", name, "-o", path_str(&file)]);
        assert_eq!(
            std::fs::read(&file).unwrap(),
            std::fs::read(fixture(&format!("{name}.json"))).unwrap(),
            "{name}"
        );
    }
}
