#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub const CASES: &[(&str, &[&str])] = &[
    (
        "algebra_check_kronecker",
        &["algebra-check", "data/kronecker_f101.json"],
    ),
    (
        "algebra_check_dual_numbers",
        &["algebra-check", "data/dual_numbers.json"],
    ),
    (
        "algebra_check_commuting",
        &["algebra-check", "data/commuting.json"],
    ),
    (
        "module_validate_nilpotent",
        &["module-validate", "data/nilpotent.json"],
    ),
    (
        "module_validate_commuting_point",
        &["module-validate", "data/commuting_point.json"],
    ),
    (
        "module_decompose_diag01",
        &["module-decompose", "data/diag01.json"],
    ),
    (
        "module_decompose_kronecker_p0",
        &["module-decompose", "data/kronecker_p0.json"],
    ),
    (
        "module_hom_p_s",
        &[
            "module-hom",
            "data/dual_numbers_p.json",
            "data/dual_numbers_s.json",
        ],
    ),
    (
        "module_hom_radical_p_p",
        &[
            "module-hom",
            "--radical",
            "data/dual_numbers_p.json",
            "data/dual_numbers_p.json",
        ],
    ),
    (
        "module_ext_s_s",
        &[
            "module-ext",
            "data/dual_numbers_s.json",
            "data/dual_numbers_s.json",
        ],
    ),
    (
        "module_dual_p",
        &["module-dual", "data/dual_numbers_p.json"],
    ),
    (
        "membership_gen_p_s",
        &[
            "membership",
            "gen",
            "data/dual_numbers_p.json",
            "data/dual_numbers_s.json",
        ],
    ),
    (
        "membership_cogen_s_p",
        &[
            "membership",
            "cogen",
            "data/dual_numbers_s.json",
            "data/dual_numbers_p.json",
        ],
    ),
    (
        "membership_ext_orth_s_p",
        &[
            "membership",
            "ext-orth",
            "data/dual_numbers_s.json",
            "data/dual_numbers_p.json",
        ],
    ),
    (
        "membership_pdim_s",
        &[
            "membership",
            "pdim",
            "data/dual_numbers_s.json",
            "--bound",
            "3",
        ],
    ),
    (
        "membership_rel_inj_p",
        &[
            "membership",
            "rel-inj",
            "data/dual_numbers_ses.json",
            "data/dual_numbers_p.json",
        ],
    ),
    (
        "membership_p2_s",
        &["membership", "p2", "--module", "data/dual_numbers_s.json"],
    ),
    (
        "embed_kronecker_diag01",
        &["embed-kronecker", "data/diag01.json"],
    ),
    (
        "scheme_equations_commuting",
        &["scheme-equations", "data/commuting.json", "--n", "2"],
    ),
    (
        "scheme_equations_commuting_text",
        &[
            "scheme-equations",
            "data/commuting.json",
            "--n",
            "2",
            "--format",
            "text",
        ],
    ),
    (
        "scheme_orbit_commuting_point",
        &["scheme-orbit", "data/commuting_point.json"],
    ),
    (
        "tube_specialize_kronecker",
        &[
            "tube-specialize",
            "data/kronecker_family_f101.json",
            "--lambda",
            "3",
            "--index",
            "2",
        ],
    ),
    (
        "tube_specialize_commuting",
        &[
            "tube-specialize",
            "data/commuting_family.json",
            "--lambda",
            "2",
            "--index",
            "3",
        ],
    ),
    (
        "tube_ses_kronecker",
        &[
            "tube-ses",
            "data/kronecker_family_f101.json",
            "--lambda",
            "0",
            "--i",
            "1",
            "--j",
            "2",
        ],
    ),
    (
        "experiment_bt1_csv",
        &[
            "experiment-bt1",
            "data/kronecker_family_f101.json",
            "--lambdas",
            "0,1,2,3",
            "--i-max",
            "3",
            "--format",
            "csv",
        ],
    ),
    (
        "experiment_bt1_json",
        &[
            "experiment-bt1",
            "data/kronecker_family_f101.json",
            "--i-max",
            "2",
        ],
    ),
    (
        "experiment_harada_sai_dual_numbers",
        &[
            "experiment-harada-sai",
            "--catalog",
            "dual-numbers",
            "--bound",
            "2",
            "--chains",
            "20",
        ],
    ),
];

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn run(args: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_repcalc"))
        .args(args)
        .current_dir(manifest_dir())
        .output()
        .expect("run repcalc");
    (out.status.code().unwrap_or(-1), out.stdout, out.stderr)
}

pub fn golden_path(name: &str) -> PathBuf {
    manifest_dir()
        .join("tests/golden")
        .join(format!("{}.out", name))
}

pub fn check_case(name: &str, args: &[&str], update: bool) -> Result<(), String> {
    let (code, first, err) = run(args);
    if code != 0 {
        return Err(format!(
            "{}: exit {} ({})",
            name,
            code,
            String::from_utf8_lossy(&err)
        ));
    }
    let (_, second, _) = run(args);
    if first != second {
        return Err(format!("{}: output differs between two runs", name));
    }
    let path = golden_path(name);
    if update {
        std::fs::write(&path, &first).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read(&path).map_err(|e| format!("{}: {}", path.display(), e))?;
    if expected != first {
        return Err(format!(
            "{}: output differs from {}",
            name,
            Path::new(&path).display()
        ));
    }
    Ok(())
}
