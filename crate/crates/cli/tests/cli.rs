use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;

const EXAMPLE: &str = r#"{"n":2,"t1":[[[1,0],[0,0]],[[0,0],[0,0]]],"t2":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcspec"))
        .args(args)
        .env_remove("BCSPEC_TOL")
        .output()
        .expect("spawn bcspec")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn decompose_scalars() {
    let e1 = json(&["decompose", "--input", r#"{"cart":[0.5,0,0,0.5]}"#]);
    assert_eq!(e1["result"]["idem"], serde_json::json!([1.0, 0.0, 0.0, 0.0]));
    assert_eq!(e1["result"]["class"], "InI1");
    assert!(e1["result"].get("inverse").is_none());

    let one = json(&["decompose", "--input", r#"{"real":[1,0,0,0]}"#]);
    assert_eq!(one["result"]["class"], "NonSingular");
    assert_eq!(one["result"]["inverse"]["idem"], serde_json::json!([1.0, 0.0, 1.0, 0.0]));

    // z1 = 1, z2 = i: z1^2 + z2^2 = 0
    let s = json(&["decompose", "--input", r#"{"cart":[1,0,0,1]}"#]);
    assert_eq!(s["result"]["class"], "InI1");
    assert_eq!(s["result"]["idem"], serde_json::json!([2.0, 0.0, 0.0, 0.0]));

    // z1 = z2 = 1: (1 - i, 1 + i)
    let x = json(&["decompose", "--input", r#"{"cart":[1,0,1,0]}"#]);
    assert_eq!(x["result"]["class"], "NonSingular");
    let check = &x["result"]["product_check"]["idem"];
    assert!((f(&check[0]) - 1.0).abs() < 1e-12 && (f(&check[2]) - 1.0).abs() < 1e-12);
}

#[test]
fn decompose_matrix() {
    let m = json(&["decompose", "--input", r#"[[{"idem":[1,0,0,0]},{"idem":[1,0,1,0]}]]"#]);
    assert_eq!(m["result"]["kind"], "matrix");
    assert_eq!(m["result"]["entry_classes"], serde_json::json!([["InI1", "NonSingular"]]));
}

#[test]
fn spectrum_of_worked_example() {
    let r = json(&["spectrum", "--input", EXAMPLE]);
    let res = &r["result"];
    let values = |key: &str| -> Vec<(f64, u64)> {
        res[key]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| (f(&e["value"][0]), e["multiplicity"].as_u64().unwrap()))
            .collect()
    };
    assert_eq!(values("upsilon1"), vec![(0.0, 1), (1.0, 1)]);
    assert_eq!(values("upsilon2"), vec![(1.0, 2)]);
    assert_eq!(res["modified_spectrum"], "({0, 1} x_e C1) ∪ (C1 x_e {1})");
    assert_eq!(res["containment"]["pairs_checked"], 2);
    assert!(res["containment"]["witness"].is_object());
    let dims: Vec<u64> = res["eigenvalues"].as_array().unwrap().iter().map(|e| e["eigenspace_dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 3]);
    assert_eq!(r["tolerances"]["singular"], 1e-10);
    assert_eq!(r["seed"], 0);
}

#[test]
fn spectrum_of_identity_and_planted_triangular() {
    let id = r#"{"t1":[[[1,0],[0,0]],[[0,0],[1,0]]],"t2":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#;
    let r = json(&["spectrum", "--input", id]);
    assert_eq!(r["result"]["upsilon1"], r["result"]["upsilon2"]);
    assert_eq!(r["result"]["upsilon1"][0]["value"], serde_json::json!([1.0, 0.0]));

    let tri = r#"{"t1":[[[3,0],[1,0]],[[0,0],[-1,0]]],"t2":[[[0,2],[5,0]],[[0,0],[0,2]]]}"#;
    let r = json(&["spectrum", "--input", tri]);
    let res = &r["result"];
    assert_eq!(res["upsilon1"][0]["value"], serde_json::json!([-1.0, 0.0]));
    assert_eq!(res["upsilon1"][1]["value"], serde_json::json!([3.0, 0.0]));
    assert_eq!(res["upsilon2"][0]["multiplicity"], 2);
    assert_eq!(res["upsilon2"][0]["eigenspace_dim"], 1);
}

#[test]
fn modified_verdicts() {
    let r = json(&["modified", "--input", EXAMPLE, "--kappa", r#"{"idem":[1,0,2,0]}"#]);
    let res = &r["result"];
    assert_eq!(res["member"], true);
    assert_eq!(res["case"], "OnlyMinus");
    assert_eq!(res["eigenspace"]["dim"], 1);
    assert_eq!(res["eigenspace"]["all_eigenvectors_singular"], true);
    assert_eq!(res["eigenspace"]["basis_classes"], serde_json::json!(["SingularNonzero"]));

    let out = run(&["modified", "--input", EXAMPLE, "--kappa", r#"{"idem":[7,0,9,0]}"#]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["member"], false);
    assert!(v["result"]["eigenspace"].is_null());
}

#[test]
fn eigenspace_by_lambda() {
    let r = json(&["eigenspace", "--input", EXAMPLE, "--lambda", "[1,0]"]);
    assert_eq!(r["result"]["eigenspace"]["dim"], 3);
    assert_eq!(r["result"]["case"], "Both");
    assert!(f(&r["result"]["eigenspace"]["max_residual"]) <= 1e-12);
}

#[test]
fn explore_sum_explicit_and_search() {
    let r = json(&[
        "explore-sum", "--input", EXAMPLE, "--kappa", r#"{"idem":[1,0,2,0]}"#, "--kappa2", r#"{"idem":[1,0,3,0]}"#,
    ]);
    assert_eq!(r["result"]["intersection_dim"], 1);
    assert_eq!(r["result"]["is_direct"], false);

    let out = run(&[
        "explore-sum", "--input", EXAMPLE, "--kappa", r#"{"idem":[5,0,5,0]}"#, "--kappa2", r#"{"idem":[1,0,3,0]}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));

    let s = json(&["explore-sum", "--search", "--trials", "30", "--seed", "3"]);
    let res = &s["result"];
    assert_eq!(res["totals"]["pairs"], 30);
    assert_eq!(
        res["totals"]["direct"].as_u64().unwrap() + res["totals"]["not_direct"].as_u64().unwrap(),
        30
    );
    assert!(res["witnesses"].as_array().unwrap().len() <= 10);

    let fixed = json(&["explore-sum", "--search", "--input", EXAMPLE, "--trials", "12"]);
    assert_eq!(fixed["result"]["fixed_operator"], true);
}

#[test]
fn output_is_byte_identical() {
    for args in [
        vec!["verify", "--trials", "5", "--seed", "17"],
        vec!["explore-sum", "--search", "--trials", "20", "--seed", "5"],
        vec!["spectrum", "--input", EXAMPLE],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn verify_default_passes_with_many_suites() {
    let r = json(&["verify", "--trials", "12"]);
    assert_eq!(r["result"]["all_passed"], true);
    assert!(r["result"]["suites"].as_array().unwrap().len() >= 10);
}

#[test]
fn injected_fault_fails_verify() {
    let out = run(&["verify", "--trials", "40", "--inject-fault", "kernel-sign"]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("kernel_theorem") && stderr.contains("seed=0"), "{stderr}");
}

#[test]
fn minimal_verify_is_fast() {
    let start = Instant::now();
    let out = run(&["verify", "--trials", "1", "--n-min", "1", "--n-max", "1"]);
    assert!(out.status.success());
    assert!(start.elapsed() < Duration::from_secs(1), "{:?}", start.elapsed());
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(run(&["spectrum", "--input", r#"{"t1": oops}"#]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--input", "/no/such/file.json"]).status.code(), Some(2));
    let rect = r#"{"t1":[[[1,0],[0,0]]],"t2":[[[1,0],[0,0]]]}"#;
    assert_eq!(run(&["spectrum", "--input", rect]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--input", EXAMPLE, "--tol", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--n-min", "4", "--n-max", "2"]).status.code(), Some(2));
    assert_eq!(run(&["decompose", "--input", r#"{"idem":[1,0,0]}"#]).status.code(), Some(2));
}

#[test]
fn tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_bcspec"))
        .args(["spectrum", "--input", EXAMPLE])
        .env("BCSPEC_TOL", "1e-6")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tolerances"]["singular"], 1e-6);

    let out = Command::new(env!("CARGO_BIN_EXE_bcspec"))
        .args(["spectrum", "--input", EXAMPLE])
        .env("BCSPEC_TOL", "nope")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn file_input_output_and_text() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("op.json");
    let output = dir.path().join("report.txt");
    std::fs::write(&input, EXAMPLE).unwrap();
    let out = run(&[
        "spectrum",
        "--input",
        input.to_str().unwrap(),
        "--format",
        "text",
        "--output",
        output.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&output).unwrap();
    assert!(text.contains("modified spectrum: ({0, 1} x_e C1) ∪ (C1 x_e {1})"), "{text}");
}
