//! Worked values for classes, induction, projectivity and stable equality.

use exact_algebra::{BigInt, CycNumber, GaloisField};
use group_rep::{stable_equal, ClassFunction, FiniteGroup, K0Class, MatrixModule, Subgroup};

#[test]
fn p_regular_class_lists() {
    let c6 = FiniteGroup::cyclic(6).unwrap();
    let reps: Vec<String> = c6
        .p_regular_classes(3)
        .iter()
        .map(|&r| c6.label(r).to_string())
        .collect();
    assert_eq!(reps, vec!["0", "3"]);
    let c7 = FiniteGroup::cyclic(7).unwrap();
    assert_eq!(c7.p_regular_classes(7).len(), 1);
    let s3 = FiniteGroup::s3();
    let orders: Vec<u64> = s3
        .p_regular_classes(3)
        .iter()
        .map(|&r| s3.element_order(r))
        .collect();
    assert_eq!(orders, vec![1, 2]);
}

#[test]
fn regular_module_vanishes_off_identity() {
    for (g, p) in [
        (FiniteGroup::s3(), 3u32),
        (FiniteGroup::cyclic(10).unwrap(), 5),
    ] {
        let f = GaloisField::prime(p).unwrap();
        let ch = MatrixModule::regular(&g, &f).brauer_character().unwrap();
        assert_eq!(ch.at_identity(), &CycNumber::from_int(1, g.order() as i64));
        assert!(ch.values()[1..].iter().all(|v| v.is_zero()));
    }
}

#[test]
fn induction_from_trivial_subgroup_is_regular() {
    let g = FiniteGroup::semidirect_cyclic(7, 3, 2).unwrap();
    let one = Subgroup::trivial(&g);
    let ind = ClassFunction::induce(&one, &ClassFunction::constant(one.group(), 7, 1)).unwrap();
    assert_eq!(ind, ClassFunction::regular(&g, 7));
}

#[test]
fn stable_equal_examples() {
    let g = FiniteGroup::cyclic(3).unwrap();
    let kg = K0Class::regular(&g, 3);
    let two = kg.add(&kg).unwrap();
    assert_eq!(stable_equal(&kg, &two).unwrap(), Some(BigInt::from(-1)));
    let triv = K0Class::formal(ClassFunction::constant(&g, 3, 1));
    assert_eq!(stable_equal(&triv, &kg).unwrap(), None);
}

#[test]
fn projectivity_examples() {
    let f3 = GaloisField::prime(3).unwrap();
    let c3 = FiniteGroup::cyclic(3).unwrap();
    assert!(MatrixModule::regular(&c3, &f3).is_projective());
    assert!(!MatrixModule::trivial(&c3, &f3).is_projective());
}
