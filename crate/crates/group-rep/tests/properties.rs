use exact_algebra::{BigRational, CycNumber, FqMatrix, GaloisField};
use group_rep::{stable_equal, ClassFunction, FiniteGroup, K0Class, MatrixModule, Subgroup};
use proptest::prelude::*;

fn groups() -> Vec<(FiniteGroup, u32)> {
    vec![
        (FiniteGroup::s3(), 3),
        (FiniteGroup::s3(), 2),
        (FiniteGroup::cyclic(12).unwrap(), 2),
        (FiniteGroup::cyclic(12).unwrap(), 3),
        (FiniteGroup::semidirect_cyclic(5, 4, 2).unwrap(), 5),
        (FiniteGroup::semidirect_cyclic(7, 3, 2).unwrap(), 7),
        (FiniteGroup::semidirect_cyclic(7, 3, 2).unwrap(), 3),
        (FiniteGroup::elementary_abelian(2, 3).unwrap(), 2),
    ]
}

fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = Vec::new();
    for a in g.elements() {
        for b in g.elements() {
            let h = Subgroup::generated(g, &[a, b]).unwrap();
            if !out.contains(&h) {
                out.push(h);
            }
        }
    }
    out
}

fn small_class_function(g: &FiniteGroup, p: u32, coeffs: &[i64]) -> ClassFunction {
    let m = g.regular_classes(p).conductor;
    let n = g.regular_classes(p).reps.len();
    ClassFunction::new(
        g,
        p,
        (0..n)
            .map(|k| {
                let a = coeffs[k % coeffs.len()];
                let b = coeffs[(k + 1) % coeffs.len()];
                &CycNumber::from_int(m, a) + &CycNumber::zeta_power(m, b).scale_int(k as i64)
            })
            .collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn frobenius_reciprocity(
        gi in 0usize..8,
        hi in any::<prop::sample::Index>(),
        phi_c in prop::collection::vec(-3i64..4, 1..5),
        chi_c in prop::collection::vec(-3i64..4, 1..5),
    ) {
        let (g, p) = groups()[gi].clone();
        let subs = all_subgroups(&g);
        let h = &subs[hi.index(subs.len())];
        let phi = small_class_function(h.group(), p, &phi_c);
        // values in Q so that restriction stays inside the subgroup's value field
        let n = g.regular_classes(p).reps.len();
        let chi = ClassFunction::new(&g, p, (0..n).map(|k| CycNumber::from_int(1, chi_c[k % chi_c.len()] * (k as i64 + 1))).collect()).unwrap();
        let lhs = ClassFunction::induce(h, &phi).unwrap().inner(&chi).unwrap();
        let rhs = phi.inner(&chi.restrict(h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn restriction_of_regular_is_free() {
    for (g, p) in groups() {
        for h in all_subgroups(&g) {
            let r = K0Class::regular(&g, p).restrict(&h).unwrap();
            let expected = K0Class::regular(h.group(), p)
                .scale(&BigRational::from_integer((h.index() as i64).into()));
            assert_eq!(r.function, expected.function);
        }
    }
}

#[test]
fn induction_is_transitive_from_one() {
    for (g, p) in groups() {
        for h in all_subgroups(&g) {
            let reg_h = ClassFunction::regular(h.group(), p);
            assert_eq!(
                ClassFunction::induce(&h, &reg_h).unwrap(),
                ClassFunction::regular(&g, p)
            );
        }
    }
}

#[test]
fn permutation_modules_match_induced_trivial() {
    for (g, p) in groups() {
        let f = GaloisField::prime(p).unwrap();
        for h in all_subgroups(&g) {
            let perm = MatrixModule::permutation(&h, &f);
            let ind = ClassFunction::induce(&h, &ClassFunction::constant(h.group(), p, 1)).unwrap();
            assert_eq!(perm.brauer_character().unwrap(), ind);
            // projective iff p does not divide |H|
            assert_eq!(perm.is_projective(), h.order() % p as usize != 0);
            assert_eq!(perm.is_projective(), perm.higman_witness().is_some());
            if let Some(lit) = perm.higman_system_solvable() {
                assert_eq!(lit, perm.is_projective());
            }
        }
    }
}

#[test]
fn projective_modules_with_equal_characters_have_equal_dimension() {
    // kG and the sum of the permutation modules over p'-subgroups with the same character
    let g = FiniteGroup::s3();
    let f = GaloisField::prime(3).unwrap();
    let c2 = g.sylow(2);
    let a = MatrixModule::regular(&g, &f);
    let b = MatrixModule::permutation(&c2, &f)
        .direct_sum(
            &MatrixModule::induced_from_line(&c2, &f, |x| if x == g.identity() { 1 } else { 2 })
                .unwrap(),
        )
        .unwrap();
    assert!(a.is_projective() && b.is_projective());
    assert_eq!(a.brauer_character().unwrap(), b.brauer_character().unwrap());
    assert_eq!(a.dim(), b.dim());
}

#[test]
fn dual_of_real_class_function_is_itself() {
    for (g, p) in groups() {
        let f = ClassFunction::constant(&g, p, 3)
            .add(&ClassFunction::regular(&g, p))
            .unwrap();
        assert_eq!(f.dual(), f);
    }
}

#[test]
fn remark_counterexample_on_affine_group() {
    // G = F_5 ⋊ C_4, P = F_5: 5·k[G/P] is stably equal to kG with c = 0, yet not projective
    let g = FiniteGroup::semidirect_cyclic(5, 4, 2).unwrap();
    let f = GaloisField::prime(5).unwrap();
    let p = g.sylow(5);
    let perm = MatrixModule::permutation(&p, &f);
    assert!(!perm.is_projective());
    let scaled = K0Class::formal(perm.brauer_character().unwrap().scale_int(5));
    assert_eq!(
        stable_equal(&scaled, &K0Class::regular(&g, 5)).unwrap(),
        Some(0.into())
    );
}

#[test]
fn brauer_character_over_extension_field() {
    // C_3 acting on F_4 by multiplication by a generator: a 1-dimensional F_4-module
    let c3 = FiniteGroup::cyclic(3).unwrap();
    let f4 = GaloisField::conway(2, 2).unwrap();
    let g = f4.generator();
    let m = MatrixModule::from_element_fn(&c3, &f4, |x| {
        FqMatrix::from_rows(&f4, &[vec![f4.pow(g, x as i64)]]).unwrap()
    })
    .unwrap();
    let ch = m.brauer_character().unwrap();
    assert_eq!(ch.at(1).unwrap(), &CycNumber::zeta_power(3, 1));
    // restriction of scalars to F_2 doubles the dimension and adds the conjugate
    let f2 = GaloisField::prime(2).unwrap();
    let r = MatrixModule::from_element_fn(&c3, &f2, |x| {
        // multiplication by g on F_4 = F_2[g]/(g^2+g+1): basis 1, g
        let base = FqMatrix::from_rows(&f2, &[vec![0, 1], vec![1, 1]]).unwrap();
        base.pow(x as u64).unwrap()
    })
    .unwrap();
    assert_eq!(
        r.brauer_character().unwrap().at(1).unwrap(),
        &CycNumber::from_int(1, -1)
    );
}
