//! Worked values for the field, factorization and lift operations.

use exact_algebra::{
    root_of_unity_lift, AlgebraError, CycNumber, FieldSpec, GaloisField, Poly, PolyRing,
};

#[test]
fn prime_field_f5() {
    let f = GaloisField::prime(5).unwrap();
    assert_eq!(f.order(), 5);
    assert_eq!(f.generator(), 2);
}

#[test]
fn f4_from_its_unique_quadratic() {
    let f = GaloisField::with_modulus(2, 2, &[1, 1, 1]).unwrap();
    let g = f.generator();
    assert_eq!(f.mul(g, g), f.add(g, 1));
}

#[test]
fn f9_from_x2_plus_1() {
    // x^2 + 1 has no root among 0, 1, 2 mod 3
    for x in 0..3u32 {
        assert_ne!((x * x + 1) % 3, 0);
    }
    let f = GaloisField::with_modulus(3, 2, &[1, 0, 1]).unwrap();
    assert_eq!(f.order(), 9);
    assert_eq!(
        f.spec(),
        FieldSpec {
            p: 3,
            n: 2,
            modulus: vec![1, 0, 1]
        }
    );
}

#[test]
fn construction_errors() {
    assert_eq!(
        GaloisField::conway(6, 1).unwrap_err(),
        AlgebraError::NotPrime(6)
    );
    assert!(matches!(
        GaloisField::with_modulus(2, 2, &[1, 0, 1]),
        Err(AlgebraError::ReducibleModulus(_))
    ));
}

#[test]
fn factor_examples() {
    let f5 = GaloisField::prime(5).unwrap();
    let r5 = PolyRing::new(&f5);
    // (x + 2)(x + 3) = x^2 + 5x + 6 = x^2 + 1 over F_5
    let (lead, fs) = r5.factor(&Poly::new(vec![1, 0, 1]), 0).unwrap();
    assert_eq!(lead, 1);
    assert_eq!(
        fs,
        vec![(Poly::new(vec![2, 1]), 1), (Poly::new(vec![3, 1]), 1)]
    );
    assert_eq!(r5.mul(&fs[0].0, &fs[1].0), Poly::new(vec![1, 0, 1]));

    let (_, fs) = r5.factor(&Poly::new(vec![4, 0, 0, 0, 1]), 7).unwrap();
    assert_eq!(fs.len(), 4);
    assert!(fs.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));

    let f2 = GaloisField::prime(2).unwrap();
    let (_, fs) = PolyRing::new(&f2).factor(&Poly::x(), 0).unwrap();
    assert_eq!(fs, vec![(Poly::x(), 1)]);

    assert_eq!(
        r5.factor(&Poly::zero(), 0).unwrap_err(),
        AlgebraError::ZeroPolynomial
    );
}

#[test]
fn lift_examples() {
    let f = GaloisField::prime(5).unwrap();
    assert_eq!(root_of_unity_lift(&f, 1, 4).unwrap(), CycNumber::one(4));
    assert_eq!(
        root_of_unity_lift(&f, 2, 4).unwrap(),
        CycNumber::zeta_power(4, 1)
    );
    assert_eq!(
        root_of_unity_lift(&f, 4, 4).unwrap(),
        CycNumber::from_int(1, -1)
    );
    let f3 = GaloisField::prime(3).unwrap();
    assert_eq!(
        root_of_unity_lift(&f3, 2, 2).unwrap(),
        CycNumber::from_int(1, -1)
    );
}
