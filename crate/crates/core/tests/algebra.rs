use repcalc_core::algebra::{algebra_radical, primitive_idempotents, regular_module};
use repcalc_core::catalog::commuting_algebra;
use repcalc_core::homcalc::decompose;
use repcalc_core::quiver::{
    kronecker_algebra, truncated_polynomial_algebra, Arrow, QuiverPresentation,
};
use repcalc_core::{Algebra, Field, Mat, NCPoly, Scalar, StructureAlgebra};

fn a3_with_zero_relation(f: &Field) -> Algebra {
    // 0 -a-> 1 -b-> 2 with ba = 0
    let arrows = vec![
        Arrow {
            name: "a".into(),
            source: 0,
            target: 1,
        },
        Arrow {
            name: "b".into(),
            source: 1,
            target: 2,
        },
    ];
    let rel = NCPoly::from_ints(f, &[(1, &[1, 0])]);
    QuiverPresentation::new(f, 3, arrows, vec![rel])
        .to_structure()
        .unwrap()
        .into()
}

fn commutative_square(f: &Field) -> Algebra {
    // 0 -> 1 -> 3 and 0 -> 2 -> 3 with the square commuting
    let arrows = vec![
        Arrow {
            name: "a".into(),
            source: 0,
            target: 1,
        },
        Arrow {
            name: "b".into(),
            source: 1,
            target: 3,
        },
        Arrow {
            name: "c".into(),
            source: 0,
            target: 2,
        },
        Arrow {
            name: "d".into(),
            source: 2,
            target: 3,
        },
    ];
    let rel = NCPoly::from_ints(f, &[(1, &[1, 0]), (-1, &[3, 2])]);
    QuiverPresentation::new(f, 4, arrows, vec![rel])
        .to_structure()
        .unwrap()
        .into()
}

fn samples() -> Vec<(&'static str, Algebra, usize)> {
    let f = Field::prime(101).unwrap();
    vec![
        ("kronecker", kronecker_algebra(&f, 2).unwrap(), 4),
        (
            "k[x]/(x^3)",
            truncated_polynomial_algebra(&f, 3).unwrap(),
            3,
        ),
        ("A3/(ba)", a3_with_zero_relation(&f), 5),
        ("square", commutative_square(&f), 9),
    ]
}

fn mul(a: &StructureAlgebra, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    a.mul(x, y)
}

#[test]
fn structure_constants_are_associative_and_unital() {
    for (name, alg, dim) in samples() {
        let a = alg.structure().unwrap();
        assert_eq!(a.dim(), dim, "{}", name);
        let basis: Vec<Vec<Scalar>> = (0..dim).map(|i| a.basis_vector(i)).collect();
        for x in &basis {
            assert_eq!(&mul(a, a.unit(), x), x, "{}", name);
            assert_eq!(&mul(a, x, a.unit()), x, "{}", name);
            for y in &basis {
                for z in &basis {
                    assert_eq!(
                        mul(a, &mul(a, x, y), z),
                        mul(a, x, &mul(a, y, z)),
                        "{}",
                        name
                    );
                }
            }
        }
    }
}

#[test]
fn primitive_idempotents_are_complete_and_orthogonal() {
    for (name, alg, _) in samples() {
        let a = alg.structure().unwrap();
        let f = a.field();
        let es = primitive_idempotents(&alg).unwrap();
        let mut sum = vec![f.zero(); a.dim()];
        for (i, e) in es.iter().enumerate() {
            assert_eq!(&mul(a, e, e), e, "{}", name);
            for (j, g) in es.iter().enumerate() {
                if i != j {
                    assert!(mul(a, e, g).iter().all(|c| f.is_zero(c)), "{}", name);
                }
            }
            sum = sum.iter().zip(e).map(|(s, c)| f.add(s, c)).collect();
            // A e is indecomposable
            let cols: Vec<Vec<Scalar>> = (0..a.dim())
                .map(|k| mul(a, &a.basis_vector(k), e))
                .collect();
            let span = Mat::from_columns(f, a.dim(), &cols).column_basis();
            let pe = regular_module(&alg).unwrap().submodule(&span).unwrap();
            let d = decompose(&pe).unwrap();
            assert!(d.is_complete() && d.summands.len() == 1, "{}", name);
        }
        assert_eq!(sum, a.unit(), "{}", name);
    }
}

#[test]
fn radical_is_a_nilpotent_ideal() {
    for (name, alg, _) in samples() {
        let a = alg.structure().unwrap();
        let f = a.field();
        let rad = algebra_radical(&alg).unwrap();
        let gens: Vec<Vec<Scalar>> = (0..rad.cols()).map(|c| rad.col(c)).collect();
        let in_rad = |v: &[Scalar]| {
            Mat::hstack(&[rad.clone(), Mat::column(f, v.to_vec())])
                .unwrap()
                .rank()
                == rad.cols()
        };
        for g in &gens {
            for k in 0..a.dim() {
                let b = a.basis_vector(k);
                assert!(in_rad(&mul(a, &b, g)) && in_rad(&mul(a, g, &b)), "{}", name);
            }
        }
        let mut power = gens.clone();
        for _ in 0..a.dim() {
            let products: Vec<Vec<Scalar>> = power
                .iter()
                .flat_map(|x| gens.iter().map(move |y| (x, y)))
                .map(|(x, y)| mul(a, x, y))
                .collect();
            let basis = Mat::from_columns(f, a.dim(), &products).column_basis();
            power = (0..basis.cols()).map(|c| basis.col(c)).collect();
        }
        assert!(
            power.iter().all(|v| v.iter().all(|c| f.is_zero(c))),
            "{}",
            name
        );
    }
}

#[test]
fn radical_dimensions() {
    let dims: Vec<usize> = samples()
        .iter()
        .map(|(_, alg, _)| algebra_radical(alg).unwrap().cols())
        .collect();
    assert_eq!(dims, [2, 2, 2, 5]);
}

#[test]
fn small_characteristic_radical_is_rejected() {
    let f = Field::prime(3).unwrap();
    let alg = truncated_polynomial_algebra(&f, 3).unwrap();
    assert!(algebra_radical(&alg).is_err());
}

#[test]
fn structure_form_is_required_for_regular_module() {
    let f = Field::prime(5).unwrap();
    let alg = commuting_algebra(&f).unwrap();
    assert!(regular_module(&alg).is_err());
    assert_eq!(alg.num_actions(), 2);
}

#[test]
fn opposite_of_opposite() {
    for (name, alg, _) in samples() {
        assert!(alg.opposite().opposite() == alg, "{}", name);
    }
}
