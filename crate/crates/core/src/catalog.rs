//! Standard small algebras, families and indecomposables.

use crate::algebra::{regular_module, Algebra, FreePresentation, ModuleRep, NCPoly};
use crate::error::Result;
use crate::field::{Field, Scalar};
use crate::linalg::Mat;
use crate::poly::PolyRing;
use crate::quiver::{kronecker_algebra, representation, truncated_polynomial_algebra};
use crate::tubes::{specialize, BimoduleFamily, PolyMatrix};

/// `k<x, y> / (xy - yx)`.
pub fn commuting_algebra(field: &Field) -> Result<Algebra> {
    let rel = NCPoly::from_ints(field, &[(1, &[0, 1]), (-1, &[1, 0])]);
    Ok(FreePresentation::new(field, 2, vec![rel])?.into())
}

/// Regular family of the 2-Kronecker algebra: `a0 -> 1`, `a1 -> x` on the
/// dimension vector `(1, 1)`.
pub fn kronecker_family(field: &Field) -> Result<BimoduleFamily> {
    let alg = kronecker_algebra(field, 2)?;
    let ring = PolyRing::new(field.clone());
    BimoduleFamily::from_representation(
        &alg,
        &[1, 1],
        &[
            PolyMatrix::from_int_coeffs(&ring, &[&[&[1]]]),
            PolyMatrix::from_int_coeffs(&ring, &[&[&[0, 1]]]),
        ],
    )
}

fn mat(field: &Field, rows: usize, cols: usize, data: &[i64]) -> Mat {
    Mat::from_vec(
        field,
        rows,
        cols,
        data.iter().map(|&v| field.from_i64(v)).collect(),
    )
    .expect("catalog matrix shape")
}

/// Named indecomposables of dimension at most 4 over the 2-Kronecker
/// algebra: both simples, `R_0`, `R_1`, `R_inf`, the projective `P_0`, the
/// injective `I_1` and the length-two regular modules at `0` and `inf`.
pub fn kronecker_indecomposables(field: &Field) -> Result<(Algebra, Vec<(String, ModuleRep)>)> {
    let fam = kronecker_family(field)?;
    let alg = fam.algebra().clone();
    let rep = |dims: [usize; 2], a: Mat, b: Mat| representation(&alg, &dims, &[a, b]);
    let mut out = vec![
        (
            "S0".to_string(),
            rep([1, 0], mat(field, 0, 1, &[]), mat(field, 0, 1, &[]))?,
        ),
        (
            "S1".to_string(),
            rep([0, 1], mat(field, 1, 0, &[]), mat(field, 1, 0, &[]))?,
        ),
        ("R0".to_string(), specialize(&fam, &field.zero(), 1)?),
        ("R1".to_string(), specialize(&fam, &field.one(), 1)?),
        (
            "Rinf".to_string(),
            rep([1, 1], mat(field, 1, 1, &[0]), mat(field, 1, 1, &[1]))?,
        ),
        (
            "P0".to_string(),
            rep([1, 2], mat(field, 2, 1, &[1, 0]), mat(field, 2, 1, &[0, 1]))?,
        ),
        (
            "I1".to_string(),
            rep([2, 1], mat(field, 1, 2, &[1, 0]), mat(field, 1, 2, &[0, 1]))?,
        ),
        ("R0[2]".to_string(), specialize(&fam, &field.zero(), 2)?),
    ];
    out.push((
        "Rinf[2]".to_string(),
        rep(
            [2, 2],
            mat(field, 2, 2, &[0, 0, 1, 0]),
            Mat::identity(field, 2),
        )?,
    ));
    Ok((alg, out))
}

/// `k[x]/(x^2)` with its simple `S` and the free module `P`.
pub fn dual_numbers_indecomposables(field: &Field) -> Result<(Algebra, Vec<(String, ModuleRep)>)> {
    let alg = truncated_polynomial_algebra(field, 2)?;
    let s = ModuleRep::new(
        &alg,
        1,
        vec![Mat::identity(field, 1), Mat::zeros(field, 1, 1)],
    )?;
    let p = regular_module(&alg)?;
    Ok((alg, vec![("S".to_string(), s), ("P".to_string(), p)]))
}

/// The first `count` elements `0, 1, 2, ...` of the field.
pub fn small_scalars(field: &Field, count: usize) -> Vec<Scalar> {
    (0..count as i64).map(|v| field.from_i64(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homcalc::{decompose, is_isomorphic};

    #[test]
    fn kronecker_catalog_is_indecomposable_and_distinct() {
        let f = Field::prime(101).unwrap();
        let (_, cat) = kronecker_indecomposables(&f).unwrap();
        for (name, m) in &cat {
            assert!(m.validate().unwrap().is_valid(), "{}", name);
            let d = decompose(m).unwrap();
            assert!(d.is_complete() && d.summands.len() == 1, "{}", name);
        }
        for a in 0..cat.len() {
            for b in a + 1..cat.len() {
                assert!(is_isomorphic(&cat[a].1, &cat[b].1).unwrap().is_none());
            }
        }
    }
}
