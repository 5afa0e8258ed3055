use exact_algebra::{BigInt, CycNumber};
use p1_oracle::{build_cover, AffineMap, GDivisor, P1ClosedPoint, P1Cover};
use psi_part::{
    m_psi_w, psi_torsion_valuation, ra, ra_closed_simple, ra_closed_tame, ra_pullback_twist,
    rho_psi_valuation, theta_multiplicities, torsion_euler_valuation, LambdaSpec, Psi, PsiError,
};

fn sign_cover() -> P1Cover {
    build_cover(5, &[AffineMap { a: 4, b: 0 }]).unwrap()
}

fn sign(c: &P1Cover) -> Psi {
    Psi::new(
        c.group(),
        vec![CycNumber::one(1), CycNumber::from_int(1, -1)],
    )
    .unwrap()
}

#[test]
fn sign_cover_minus_ramification() {
    let c = sign_cover();
    let b = c.line_bundle(&c.ramified_divisor(-1)).unwrap();
    let (sgn, triv) = (sign(&c), Psi::trivial(c.group()));
    let one = BigInt::from(1);
    assert_eq!(ra(c.data(), &b, &sgn).unwrap(), one);
    assert_eq!(ra_closed_simple(c.data(), &b, &sgn).unwrap(), one);
    assert_eq!(ra_closed_tame(c.data(), &b, &sgn).unwrap(), one);
    assert_eq!(ra_pullback_twist(c.data(), &b, &sgn).unwrap(), one);
    assert_eq!(ra(c.data(), &b, &triv).unwrap(), BigInt::from(0));
    assert_eq!(
        ra_closed_simple(c.data(), &b, &triv).unwrap(),
        BigInt::from(0)
    );
    // E^G has degree -2, so χ_k(E^G) = -1
    assert_eq!(b.invariant_chi, -1);
    let lambda = LambdaSpec::new(5, 1).unwrap();
    assert_eq!(
        rho_psi_valuation(c.data(), &b, &sgn, &lambda).unwrap(),
        BigInt::from(0)
    );
    assert_eq!(
        rho_psi_valuation(c.data(), &b, &triv, &lambda).unwrap(),
        BigInt::from(1)
    );
    let other = LambdaSpec::new(3, 1).unwrap();
    assert_eq!(
        rho_psi_valuation(c.data(), &b, &sgn, &other).unwrap(),
        BigInt::from(0)
    );
}

#[test]
fn local_multiplicities_on_the_sign_cover() {
    let c = sign_cover();
    let sgn = sign(&c);
    for pl in c.data().places() {
        assert_eq!(theta_multiplicities(&sgn, pl.datum()).unwrap(), vec![0, 1]);
        assert_eq!(m_psi_w(&sgn, pl.datum(), 1).unwrap(), 1);
        let triv = Psi::trivial(c.group());
        assert_eq!(m_psi_w(&triv, pl.datum(), 0).unwrap(), 1);
        assert_eq!(m_psi_w(&triv, pl.datum(), 1).unwrap(), 0);
        assert_eq!(
            theta_multiplicities(&Psi::regular(c.group()), pl.datum()).unwrap(),
            vec![1, 1]
        );
    }
}

#[test]
fn trivial_cover_structure_sheaf() {
    for q in [5, 9, 8] {
        let c = build_cover(q, &[]).unwrap();
        assert_eq!(c.group().order(), 1);
        let b = c.line_bundle(&GDivisor::zero()).unwrap();
        let lambda = LambdaSpec::new(c.field().characteristic(), 1).unwrap();
        let s = c.field().degree() as i64;
        assert_eq!(
            rho_psi_valuation(c.data(), &b, &Psi::trivial(c.group()), &lambda).unwrap(),
            BigInt::from(-s)
        );
        assert_eq!(
            ra(c.data(), &b, &Psi::trivial(c.group())).unwrap(),
            BigInt::from(0)
        );
    }
}

#[test]
fn wild_and_unramified_covers_have_no_ra() {
    // I_w = P_w at every ramified point
    let c = build_cover(9, &[AffineMap { a: 1, b: 1 }, AffineMap { a: 1, b: 3 }]).unwrap();
    let b = c
        .line_bundle(&GDivisor::from_entries([(P1ClosedPoint::Infinity, 8)]))
        .unwrap();
    for psi in Psi::irreducibles(c.group()).unwrap() {
        assert_eq!(ra(c.data(), &b, &psi).unwrap(), BigInt::from(0));
    }
    let triv = build_cover(7, &[]).unwrap();
    let b = triv
        .line_bundle(&GDivisor::from_entries([(P1ClosedPoint::Infinity, 3)]))
        .unwrap();
    assert_eq!(
        ra(triv.data(), &b, &Psi::trivial(triv.group())).unwrap(),
        BigInt::from(0)
    );
}

#[test]
fn closed_forms_check_their_hypotheses() {
    // stalk exponents 2 are not of the shape π*F(-Z_L)
    let c = build_cover(7, &[AffineMap { a: 2, b: 0 }]).unwrap();
    let d = c.ramified_divisor(2);
    let b = c.line_bundle(&d).unwrap();
    let psi = Psi::irreducibles(c.group()).unwrap().pop().unwrap();
    assert!(matches!(
        ra_closed_tame(c.data(), &b, &psi),
        Err(PsiError::HypothesisViolated(_))
    ));
    // C_2 over F_9: still tame, and |I_w| divides p - 1
    let c = build_cover(9, &[AffineMap { a: 2, b: 0 }]).unwrap();
    let b = c.line_bundle(&c.ramified_divisor(-1)).unwrap();
    for psi in Psi::irreducibles(c.group()).unwrap() {
        let r = ra(c.data(), &b, &psi).unwrap();
        assert_eq!(ra_closed_tame(c.data(), &b, &psi).unwrap(), r);
        assert_eq!(ra_closed_simple(c.data(), &b, &psi).unwrap(), r);
    }
    // a wild place rules the tame closed form out
    let w = build_cover(3, &[AffineMap { a: 1, b: 1 }, AffineMap { a: 2, b: 0 }]).unwrap();
    let b = w.line_bundle(&w.ramified_divisor(-1)).unwrap();
    let psi = Psi::trivial(w.group());
    assert!(ra_closed_tame(w.data(), &b, &psi).is_err());
}

#[test]
fn torsion_lengths() {
    assert_eq!(torsion_euler_valuation(&[(0, 2)]), -2);
    assert_eq!(torsion_euler_valuation(&[(1, 3)]), 3);
    assert_eq!(torsion_euler_valuation(&[(0, 1), (1, 1)]), 0);
    let l1 = LambdaSpec::new(5, 1).unwrap();
    let l2 = LambdaSpec::new(5, 2).unwrap();
    assert_eq!(psi_torsion_valuation(3, &l1), -3);
    assert_eq!(psi_torsion_valuation(0, &l2), 0);
    assert_eq!(psi_torsion_valuation(2, &l2), -4);
}
