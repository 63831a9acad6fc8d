use std::process::Command;

use repcalc_core::homcalc::is_isomorphic;
use repcalc_core::io::{from_json, ModuleDoc, SesDoc};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_repcalc"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("run repcalc");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["module-validate"]).0, 2);
    assert_eq!(run(&["module-validate", "data/missing.json"]).0, 2);
    assert_eq!(
        run(&["module-validate", "data/nilpotent.json", "--format", "csv"]).0,
        2
    );
    assert_eq!(
        run(&["module-validate", "data/nilpotent.json", "--field", "F4"]).0,
        2
    );
}

#[test]
fn domain_errors_exit_1_with_error_object() {
    let (code, out, err) = run(&[
        "module-hom",
        "data/dual_numbers_s.json",
        "data/kronecker_r0.json",
    ]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    let e = json(&err);
    assert_eq!(e["code"], "AlgebraMismatch");
    assert!(e["message"].is_string());
    assert_eq!(e["context"]["command"], "module-hom");

    let (code, _, err) = run(&[
        "tube-ses",
        "data/kronecker_family_f101.json",
        "--lambda",
        "0",
        "--i",
        "2",
        "--j",
        "1",
    ]);
    assert_eq!(code, 1);
    assert_eq!(json(&err)["code"], "IndexOrder");

    let (code, _, err) = run(&["embed-kronecker", "data/nilpotent.json"]);
    assert_eq!(code, 1);
    assert_eq!(json(&err)["code"], "InvalidPresentation");
}

#[test]
fn emitted_modules_reparse() {
    for args in [
        vec!["module-dual", "data/dual_numbers_p.json"],
        vec!["embed-kronecker", "data/diag01.json"],
        vec![
            "tube-specialize",
            "data/kronecker_family_f101.json",
            "--lambda",
            "5",
            "--index",
            "3",
        ],
    ] {
        let (code, out, _) = run(&args);
        assert_eq!(code, 0, "{:?}", args);
        let doc: ModuleDoc = from_json(&out).unwrap();
        assert_eq!(
            serde_json::to_value(&doc).unwrap(),
            json(&out),
            "{:?}",
            args
        );
        let alg = doc.algebra.to_algebra().unwrap();
        let m = doc.body.to_module(&alg).unwrap();
        assert!(m.validate().unwrap().is_valid());
    }
}

#[test]
fn emitted_sequence_reparses_and_is_exact() {
    let (code, out, _) = run(&[
        "tube-ses",
        "data/kronecker_family_f101.json",
        "--lambda",
        "1",
        "--i",
        "2",
        "--j",
        "3",
    ]);
    assert_eq!(code, 0);
    let doc: SesDoc = from_json(&out).unwrap();
    let alg = doc.algebra.to_algebra().unwrap();
    let s = doc.to_ses(&alg).unwrap();
    assert_eq!((s.l.dim(), s.m.dim(), s.n.dim()), (4, 6, 2));
    let (q, _) = s.m.quotient(&s.f.column_basis()).unwrap();
    assert!(is_isomorphic(&q, &s.n).unwrap().is_some());
}

#[test]
fn spec_examples() {
    let v = json(&run(&["module-validate", "data/nilpotent.json"]).1);
    assert_eq!(v["valid"], true);
    let v = json(&run(&["module-decompose", "data/diag01.json"]).1);
    assert_eq!(v["dims"], serde_json::json!([1, 1]));
    assert!(v["seed"].is_u64());
    let (_, csv, err) = run(&[
        "experiment-bt1",
        "data/kronecker_family_f101.json",
        "--lambdas",
        "0,1,2,3",
        "--i-max",
        "3",
        "--format",
        "csv",
    ]);
    assert!(err.contains("seed"));
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 12);
    let mut dims: Vec<&str> = rows.iter().map(|r| r.split(',').nth(2).unwrap()).collect();
    dims.sort();
    dims.dedup();
    assert_eq!(dims, ["2", "4", "6"]);
}

#[test]
fn field_override_and_seed() {
    let v = json(&run(&["algebra-check", "data/dual_numbers.json", "--field", "F7"]).1);
    assert_eq!(v["field"], "F7");
    let v = json(&run(&["algebra-check", "data/dual_numbers.json", "--field", "F2^2"]).1);
    assert_eq!(v["field"], "F2^2");
    assert!(v["radical_dim"].is_null());
    let a = run(&["module-decompose", "data/diag01.json", "--seed", "7"]).1;
    assert_eq!(json(&a)["seed"], 7);
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("repcalc-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ext.json");
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&[
        "module-ext",
        "data/dual_numbers_s.json",
        "data/dual_numbers_p.json",
        "--output",
        p,
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v = json(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(v["dim"], 0);
    std::fs::remove_dir_all(&dir).unwrap();
}
