use repcalc_core::catalog::{commuting_algebra, kronecker_family};
use repcalc_core::homcalc::{decompose, harada_sai_chain_check, is_direct_summand, is_isomorphic};
use repcalc_core::io::parse_field;
use repcalc_core::tubes::{
    extend_scalars, restrict_scalars, specialize, tube_inclusion, tube_projection, tube_ses,
    validate_family, BimoduleFamily, PolyMatrix,
};
use repcalc_core::{Error, Field, PolyRing};

#[test]
fn specializations_are_valid_with_expected_dimension() {
    let f = Field::prime(101).unwrap();
    let ring = PolyRing::new(f.clone());
    let comm = commuting_algebra(&f).unwrap();
    // x -> t, y -> t^2 / (t - 5)
    let fam = BimoduleFamily::new(
        &comm,
        1,
        vec![
            PolyMatrix::from_int_coeffs(&ring, &[&[&[0, 1]]]),
            PolyMatrix::from_int_coeffs(&ring, &[&[&[0, 0, 1]]]),
        ],
        vec![0, 1],
        ring.from_ints(&[-5, 1]),
    )
    .unwrap();
    assert!(validate_family(&fam).unwrap().is_valid());
    for fam in [fam, kronecker_family(&f).unwrap()] {
        for l in 0..4 {
            for i in 1..=5 {
                let m = specialize(&fam, &f.from_i64(l), i).unwrap();
                assert!(m.validate().unwrap().is_valid());
                assert_eq!(m.dim(), fam.rank() * i);
            }
        }
    }
}

#[test]
fn vanishing_denominator_is_reported() {
    let f = Field::prime(101).unwrap();
    let ring = PolyRing::new(f.clone());
    let comm = commuting_algebra(&f).unwrap();
    let fam = BimoduleFamily::new(
        &comm,
        1,
        vec![
            PolyMatrix::identity(&ring, 1),
            PolyMatrix::identity(&ring, 1),
        ],
        vec![1, 0],
        ring.from_ints(&[-5, 1]),
    )
    .unwrap();
    assert!(matches!(
        specialize(&fam, &f.from_i64(5), 1),
        Err(Error::DenominatorVanishes)
    ));
    assert!(specialize(&fam, &f.from_i64(4), 0).is_err());
}

#[test]
fn invalid_family_is_reported() {
    let f = Field::prime(101).unwrap();
    let ring = PolyRing::new(f.clone());
    let comm = commuting_algebra(&f).unwrap();
    let fam = BimoduleFamily::polynomial(
        &comm,
        2,
        vec![
            PolyMatrix::from_int_coeffs(&ring, &[&[&[0], &[1]], &[&[0], &[0]]]),
            PolyMatrix::from_int_coeffs(&ring, &[&[&[0], &[0]], &[&[1], &[0]]]),
        ],
    )
    .unwrap();
    assert!(!validate_family(&fam).unwrap().is_valid());
}

#[test]
fn kronecker_tubes_are_pairwise_distinct() {
    for f in [Field::prime(101).unwrap(), Field::rational()] {
        let fam = kronecker_family(&f).unwrap();
        for i in 1..=4 {
            let ms: Vec<_> = (0..4)
                .map(|l| specialize(&fam, &f.from_i64(l), i).unwrap())
                .collect();
            for a in 0..ms.len() {
                let d = decompose(&ms[a]).unwrap();
                assert!(d.is_complete() && d.summands.len() == 1, "{} i={}", f, i);
                for b in a + 1..ms.len() {
                    assert!(
                        is_isomorphic(&ms[a], &ms[b]).unwrap().is_none(),
                        "{} i={}",
                        f,
                        i
                    );
                }
            }
        }
    }
}

#[test]
fn tube_sequences_are_exact() {
    let f = Field::prime(101).unwrap();
    let fam = kronecker_family(&f).unwrap();
    let l = f.from_i64(7);
    for j in 2..=5 {
        for i in 1..j {
            let s = tube_ses(&fam, &l, i, j).unwrap();
            assert_eq!(s.f.rank(), 2 * i);
            assert_eq!(s.g.rank(), 2 * (j - i));
            assert!(s.g.mul(&s.f).unwrap().is_zero());
        }
    }
    assert!(matches!(
        tube_ses(&fam, &l, 3, 3),
        Err(Error::IndexOrder { .. })
    ));
    assert!(tube_ses(&fam, &l, 0, 2).is_err());
}

#[test]
fn tube_chain_satisfies_the_length_bound() {
    // R[2] -> R[1] -> R[2] -> ... alternating projection and inclusion
    let f = Field::prime(101).unwrap();
    let fam = kronecker_family(&f).unwrap();
    let l = f.from_i64(3);
    let r1 = specialize(&fam, &l, 1).unwrap();
    let r2 = specialize(&fam, &l, 2).unwrap();
    let down = tube_projection(&fam, &l, 1, 2).unwrap();
    let up = tube_inclusion(&fam, &l, 1, 2).unwrap();
    let bound = 4;
    let len = (1 << bound) - 1;
    let modules: Vec<_> = (0..=len)
        .map(|k| if k % 2 == 0 { r2.clone() } else { r1.clone() })
        .collect();
    let maps: Vec<_> = (0..len)
        .map(|k| if k % 2 == 0 { down.clone() } else { up.clone() })
        .collect();
    let report = harada_sai_chain_check(&modules, &maps, bound).unwrap();
    assert!(!report.violation);
    assert_eq!(report.prefix_vanishes.last(), Some(&true));
    assert!(!report.prefix_vanishes[1]);
    assert!(report.prefix_vanishes[3]);
}

#[test]
fn restriction_then_extension_contains_the_module() {
    let spec = parse_field("F2^2").unwrap();
    let f4 = Field::from_spec(&spec).unwrap();
    let fam = kronecker_family(&f4).unwrap();
    for l in f4.elements(4).unwrap() {
        for i in 1..=2 {
            let y = specialize(&fam, &l, i).unwrap();
            let r = restrict_scalars(&y).unwrap();
            assert_eq!(r.field(), &Field::prime(2).unwrap());
            assert!(r.validate().unwrap().is_valid());
            let back = extend_scalars(&r, &spec).unwrap();
            assert!(is_direct_summand(&y, &back).unwrap());
        }
    }
    let f3 = Field::prime(3).unwrap();
    let x = specialize(&kronecker_family(&f3).unwrap(), &f3.one(), 1).unwrap();
    assert!(matches!(
        extend_scalars(&x, &spec),
        Err(Error::NotAnExtension)
    ));
    assert!(restrict_scalars(&x).is_err());
}
