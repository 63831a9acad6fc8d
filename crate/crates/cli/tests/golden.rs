//! Golden outputs for every bundled example. Run with `UPDATE_GOLDEN=1` to
//! rewrite the expected files.

mod common;

use common::{check_case, run, CASES};

#[test]
fn golden_outputs_are_stable() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let failures: Vec<String> = CASES
        .iter()
        .filter_map(|(name, args)| check_case(name, args, update).err())
        .collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn bundled_documents_validate() {
    for doc in [
        "data/nilpotent.json",
        "data/commuting_point.json",
        "data/diag01.json",
        "data/kronecker_r0.json",
        "data/kronecker_p0.json",
        "data/dual_numbers_s.json",
        "data/dual_numbers_p.json",
    ] {
        let (code, out, _) = run(&["module-validate", doc]);
        assert_eq!(code, 0, "{}", doc);
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(v["valid"], true, "{}", doc);
    }
    for alg in [
        "data/kronecker_f101.json",
        "data/dual_numbers.json",
        "data/commuting.json",
    ] {
        assert_eq!(run(&["algebra-check", alg]).0, 0, "{}", alg);
    }
}
