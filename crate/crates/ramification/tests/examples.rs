use exact_algebra::GaloisField;
use group_rep::FiniteGroup;
use ramification::{
    check_ew, d_prime, descent_exponent, is_weakly_ramified, l_exponents, l_from_neron,
    BundleStalk, LocalDatum, RamificationError,
};

fn affine_datum(field: &GaloisField, e: u64) -> LocalDatum {
    let (g, pairs) = FiniteGroup::affine_full(field, e).unwrap();
    let all: Vec<usize> = g.elements().collect();
    let wild: Vec<usize> = g.elements().filter(|&x| pairs[x].0 == 1).collect();
    let tame: Vec<usize> = g.elements().filter(|&x| pairs[x].1 == 0).collect();
    let c0 = *tame.iter().find(|&&x| g.element_order(x) == e).unwrap();
    let filt = vec![g.order(), field.order() as usize, 1];
    LocalDatum::new(&g, &all, &wild, &tame, field, c0, pairs[c0].0, Some(filt)).unwrap()
}

fn tame_datum(p: u32, e: usize) -> LocalDatum {
    let g = FiniteGroup::cyclic(e).unwrap();
    let f = GaloisField::prime(p).unwrap();
    let all: Vec<usize> = g.elements().collect();
    let theta = f.exp(((p as i64) - 1) / e as i64);
    LocalDatum::new(&g, &all, &[0], &all, &f, 1, theta, Some(vec![e, 1])).unwrap()
}

#[test]
fn weak_ramification_examples() {
    assert!(is_weakly_ramified(&[4, 1, 1]).unwrap());
    assert!(is_weakly_ramified(&[5, 5, 1]).unwrap());
    assert!(!is_weakly_ramified(&[5, 5, 5, 1]).unwrap());
    assert_eq!(
        is_weakly_ramified(&[]).unwrap_err(),
        RamificationError::MissingFiltration
    );
}

#[test]
fn ew_examples() {
    let f5 = GaloisField::prime(5).unwrap();
    let d = affine_datum(&f5, 4);
    assert!(check_ew(&BundleStalk::new(vec![-1, -1]), &d));
    let f3 = GaloisField::prime(3).unwrap();
    let s3 = affine_datum(&f3, 2);
    assert_eq!(s3.wild_order(), 3);
    assert!(!check_ew(&BundleStalk::line(0), &s3));
    let t = tame_datum(7, 3);
    for n in -5..5 {
        assert!(check_ew(&BundleStalk::line(n), &t));
    }
}

#[test]
fn l_examples() {
    assert_eq!(
        l_exponents(&BundleStalk::line(3), &tame_datum(11, 5)).unwrap(),
        vec![3]
    );
    let f5 = GaloisField::prime(5).unwrap();
    let d = affine_datum(&f5, 4);
    assert_eq!(
        l_exponents(&BundleStalk::new(vec![-1, -1]), &d).unwrap(),
        vec![3, 3]
    );
    let f3 = GaloisField::prime(3).unwrap();
    assert_eq!(
        l_exponents(&BundleStalk::line(5), &affine_datum(&f3, 2)).unwrap(),
        vec![1]
    );
    assert!(matches!(
        l_exponents(&BundleStalk::line(0), &affine_datum(&f3, 2)),
        Err(RamificationError::EwViolation {
            n: 0,
            wild_order: 3
        })
    ));
}

#[test]
fn neron_examples() {
    let f5 = GaloisField::prime(5).unwrap();
    let d = affine_datum(&f5, 4);
    assert_eq!(l_from_neron(&[7], &[false], &d).unwrap(), vec![3]);
    assert_eq!(l_from_neron(&[2], &[true], &d).unwrap(), vec![1]);
    assert_eq!(l_from_neron(&[0], &[true], &d).unwrap(), vec![3]);
    assert!(matches!(
        l_from_neron(&[20], &[true], &d),
        Err(RamificationError::NeronOutOfRange { .. })
    ));
    assert!(matches!(
        l_from_neron(&[-1], &[true], &d),
        Err(RamificationError::NeronOutOfRange { .. })
    ));
    assert!(matches!(
        l_from_neron(&[1, 2], &[true], &d),
        Err(RamificationError::LengthMismatch { .. })
    ));
}

#[test]
fn d_prime_and_descent_examples() {
    assert_eq!(d_prime(&[0, 0, 3]), 2);
    assert_eq!(d_prime(&[]), 0);
    assert_eq!(d_prime(&[1, 2, 3]), 0);
    assert_eq!(descent_exponent(-1, 6), -1);
    assert_eq!(descent_exponent(5, 6), 0);
    assert_eq!(descent_exponent(0, 2), 0);
}

#[test]
fn structure_is_validated() {
    let f3 = GaloisField::prime(3).unwrap();
    let (g, pairs) = FiniteGroup::affine_full(&f3, 2).unwrap();
    let all: Vec<usize> = g.elements().collect();
    let wild: Vec<usize> = g.elements().filter(|&x| pairs[x].0 == 1).collect();
    let tame: Vec<usize> = g.elements().filter(|&x| pairs[x].1 == 0).collect();
    let c0 = tame[1];
    // theta of the wrong order
    assert!(LocalDatum::new(&g, &all, &wild, &tame, &f3, c0, 1, None).is_err());
    // P not the Sylow subgroup
    assert!(LocalDatum::new(&g, &all, &[0], &tame, &f3, c0, 2, None).is_err());
    // filtration inconsistent with |P|
    assert!(LocalDatum::new(&g, &all, &wild, &tame, &f3, c0, 2, Some(vec![6, 1])).is_err());
    assert!(LocalDatum::new(&g, &all, &wild, &tame, &f3, c0, 2, Some(vec![6, 3, 1])).is_ok());
    // C of the wrong order
    assert!(LocalDatum::new(&g, &all, &wild, &[0], &f3, 0, 1, None).is_err());
}
