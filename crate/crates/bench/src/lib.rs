//! Fixtures shared by the benchmarks.

use repcalc_core::catalog::{kronecker_family, kronecker_indecomposables};
use repcalc_core::homcalc::direct_sum_all;
use repcalc_core::tubes::specialize;
use repcalc_core::{Field, Mat, ModuleRep};

/// Dense pseudo-random matrix with entries from a fixed linear congruence.
pub fn dense(field: &Field, n: usize, seed: u64) -> Mat {
    Mat::from_fn(field, n, n, |r, c| {
        let x = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(((r * n + c) as u64).wrapping_mul(1442695040888963407));
        field.from_i64(((x >> 33) % 97) as i64 - 48)
    })
}

/// Regular Kronecker module at `lambda` of tube length `i`.
pub fn tube_module(field: &Field, lambda: i64, i: usize) -> ModuleRep {
    let fam = kronecker_family(field).expect("family");
    specialize(&fam, &field.from_i64(lambda), i).expect("specialization")
}

/// Direct sum of every catalog indecomposable, conjugated by a dense
/// invertible matrix so the summands are hidden.
pub fn hidden_sum(field: &Field) -> ModuleRep {
    let (alg, cat) = kronecker_indecomposables(field).expect("catalog");
    let parts: Vec<ModuleRep> = cat.into_iter().map(|(_, m)| m).collect();
    let sum = direct_sum_all(&alg, &parts).expect("sum");
    let mut seed = 1;
    loop {
        let p = dense(field, sum.dim(), seed);
        if p.is_invertible() {
            return sum.conjugate(&p).expect("conjugate");
        }
        seed += 1;
    }
}
