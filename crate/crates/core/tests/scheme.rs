use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use repcalc_core::catalog::commuting_algebra;
use repcalc_core::scheme::{evaluate_point, module_scheme_equations, orbit_data, same_orbit};
use repcalc_core::{Algebra, Field, FreePresentation, Mat, ModuleRep, NCPoly};

fn random_mat(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Mat {
    let data = (0..n * n).map(|_| f.random(rng)).collect();
    Mat::from_vec(f, n, n, data).unwrap()
}

fn random_invertible(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Mat {
    loop {
        let m = random_mat(f, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// `k<x, y> / (x^2, y^2, xy + yx)`, whose points include pairs of
/// anticommuting square-zero matrices.
fn exterior(f: &Field) -> Algebra {
    let rels = vec![
        NCPoly::from_ints(f, &[(1, &[0, 0])]),
        NCPoly::from_ints(f, &[(1, &[1, 1])]),
        NCPoly::from_ints(f, &[(1, &[0, 1]), (1, &[1, 0])]),
    ];
    FreePresentation::new(f, 2, rels).unwrap().into()
}

/// Known solutions: polynomials in one matrix for `k[x, y]`; strictly lower
/// triangular square-zero blocks for the exterior algebra.
fn known_point(alg: &Algebra, which: usize, n: usize, rng: &mut ChaCha8Rng) -> ModuleRep {
    let f = alg.field().clone();
    let base = if which == 0 {
        let m = random_mat(&f, n, rng);
        let x = m
            .scale(&f.random(rng))
            .add(&Mat::identity(&f, n).scale(&f.random(rng)))
            .unwrap();
        let y = m.mul(&m).unwrap().add(&m.scale(&f.random(rng))).unwrap();
        vec![x, y]
    } else {
        // x = E_{n-1,0}, y = c * E_{n-1,0}: both square to zero and anticommute
        let mut x = Mat::zeros(&f, n, n);
        x.set(n - 1, 0, f.one());
        let y = x.scale(&f.random(rng));
        vec![x, y]
    };
    let p = random_invertible(&f, n, rng);
    ModuleRep::new(alg, n, base).unwrap().conjugate(&p).unwrap()
}

#[test]
fn valid_points_vanish_and_perturbations_do_not() {
    let f = Field::prime(101).unwrap();
    let algs = [commuting_algebra(&f).unwrap(), exterior(&f)];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut perturbed = 0;
    for k in 0..50 {
        let which = k % 2;
        let alg = &algs[which];
        let n = 2 + k % 3;
        let eqs = module_scheme_equations(alg.free().unwrap(), n);
        assert_eq!(eqs.num_variables(), 2 * n * n);
        assert_eq!(
            eqs.equations.len(),
            alg.free().unwrap().relations().len() * n * n
        );
        let x = known_point(alg, which, n, &mut rng);
        assert!(x.validate().unwrap().is_valid());
        let values = evaluate_point(&eqs, x.action()).unwrap();
        assert!(values.iter().all(|v| f.is_zero(v)), "point {}", k);
        loop {
            let mut action = x.action().to_vec();
            let g = rng.gen_range(0..2);
            let (r, c) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let v = f.add(action[g].get(r, c), &f.one());
            action[g].set(r, c, v);
            let y = ModuleRep::new(alg, n, action).unwrap();
            if y.validate().unwrap().is_valid() {
                continue;
            }
            let values = evaluate_point(&eqs, y.action()).unwrap();
            assert!(values.iter().any(|v| !f.is_zero(v)), "point {}", k);
            perturbed += 1;
            break;
        }
    }
    assert_eq!(perturbed, 50);
}

#[test]
fn orbit_membership_is_conjugation_invariant() {
    let f = Field::prime(101).unwrap();
    let alg = commuting_algebra(&f).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for k in 0..20 {
        let n = 2 + k % 2;
        let x = known_point(&alg, 0, n, &mut rng);
        let y = known_point(&alg, 0, n, &mut rng);
        let px = x.conjugate(&random_invertible(&f, n, &mut rng)).unwrap();
        let py = y.conjugate(&random_invertible(&f, n, &mut rng)).unwrap();
        assert!(same_orbit(&x, &px).unwrap());
        assert_eq!(same_orbit(&x, &y).unwrap(), same_orbit(&px, &py).unwrap());
        let od = orbit_data(&x).unwrap();
        assert_eq!(od.stab_dim + od.orbit_dim, n * n);
        assert_eq!(od, orbit_data(&px).unwrap());
    }
}

#[test]
fn rational_equations_print_cleanly() {
    let q = Field::rational();
    let alg = commuting_algebra(&q).unwrap();
    let eqs = module_scheme_equations(alg.free().unwrap(), 1);
    assert!(eqs.to_text().lines().count() >= 1);
    let x = ModuleRep::new(
        &alg,
        1,
        vec![Mat::from_ints(&q, &[&[2]]), Mat::from_ints(&q, &[&[3]])],
    )
    .unwrap();
    assert!(evaluate_point(&eqs, x.action())
        .unwrap()
        .iter()
        .all(|v| q.is_zero(v)));
    assert!(evaluate_point(&eqs, &x.action()[..1]).is_err());
}
