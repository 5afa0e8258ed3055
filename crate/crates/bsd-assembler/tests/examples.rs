use bsd_assembler::{
    predict_main, GlobalArithmeticInput, GramEntry, Hypotheses, LieInput, LoInput, Prediction,
};
use exact_algebra::CycNumber;
use p1_oracle::{build_cover, AffineMap, DivisorSpec};
use psi_part::{LambdaSpec, Psi, PsiSpec};

fn map(a: u32, b: u32) -> AffineMap {
    AffineMap { a, b }
}

fn all_hypotheses() -> Hypotheses {
    Hypotheses {
        sha_finite: true,
        weakly_ramified: Some(true),
        tame_over_z2: Some(true),
        no_ell_torsion: Some(true),
    }
}

fn input(q: u64, group_order: u64, psi: PsiSpec, lo: LoInput) -> GlobalArithmeticInput {
    let p = (2..=q).find(|d| q % d == 0).unwrap() as u32;
    GlobalArithmeticInput {
        constant_field_order: q,
        group_order,
        dim_a: 1,
        genus_k: 0,
        deg_z1: 3,
        z2: vec![],
        lie: LieInput::Degree { degree: -2 },
        psi,
        lambda: LambdaSpec::new(p, 1).unwrap(),
        lo: Some(lo),
        regulator: vec![],
        r_alg: 0,
        sha_length: 0,
        hypotheses: all_hypotheses(),
        coprime: None,
    }
}

/// `−Z_L` on `P¹` with `Z_L` the ramified points: `-1` at `∞` and at `0`.
fn minus_branch_points() -> DivisorSpec {
    serde_json::from_str(r#"{"infinity": -1, "points": [{"poly": [0, 1], "mult": -1}]}"#).unwrap()
}

fn predict(input: &GlobalArithmeticInput) -> Prediction {
    let p = predict_main(input).unwrap();
    assert_eq!(p.exponent, p.breakdown.total());
    p
}

#[test]
fn toy_c2_cover_end_to_end() {
    let c = build_cover(5, &[map(4, 0)]).unwrap();
    for psi in Psi::irreducibles(c.group()).unwrap() {
        let sign = psi.at(1).to_i64() == Some(-1);
        let lo = LoInput::P1 {
            q: 5,
            generators: vec![map(4, 0)],
            divisor: minus_branch_points(),
        };
        let p = predict(&input(5, 2, psi.spec(), lo));
        assert_eq!(p.vol_exponent, -4);
        assert_eq!(p.lo_exponent, Some(sign as i64));
        assert_eq!(p.exponent, -4 + sign as i64);
    }
}

#[test]
fn lo_over_a_larger_constant_field() {
    // |k| = 25: the volume counts |k| = p², and lo = Σ_w j_{w,ψ}[k_w : F_p]/|G| = 2
    let minus_one = p1_oracle::field_of_order(25).unwrap().neg(1);
    let c = build_cover(25, &[map(minus_one, 0)]).unwrap();
    let sign = Psi::irreducibles(c.group())
        .unwrap()
        .into_iter()
        .find(|p| p.at(1).to_i64() == Some(-1))
        .unwrap();
    let lo = LoInput::P1 {
        q: 25,
        generators: vec![map(minus_one, 0)],
        divisor: minus_branch_points(),
    };
    let p = predict(&input(25, 2, sign.spec(), lo));
    assert_eq!(p.breakdown.volume, -8);
    assert_eq!(p.lo_exponent, Some(2));
    assert_eq!(p.exponent, -6);
}

#[test]
fn lo_closed_form_for_tame_kummer_covers() {
    // μ_e acting by x ↦ ζx with e | p - 1: θ = ζ at ∞ and ζ⁻¹ at 0, so for a
    // non-trivial ψ the indices are j and e - j, and lo = (j + e - j)/e = 1
    for (q, e) in [(5u32, 2u32), (5, 4), (7, 3), (7, 6), (13, 4), (11, 5)] {
        let f = p1_oracle::field_of_order(q).unwrap();
        let zeta = f.exp(((q - 1) / e) as i64);
        let c = build_cover(q, &[map(zeta, 0)]).unwrap();
        for psi in Psi::irreducibles(c.group()).unwrap() {
            let trivial = psi == Psi::trivial(c.group());
            let lo = LoInput::P1 {
                q,
                generators: vec![map(zeta, 0)],
                divisor: minus_branch_points(),
            };
            let p = predict(&input(q as u64, e as u64, psi.spec(), lo));
            assert_eq!(p.lo_exponent, Some(!trivial as i64), "q = {q}, e = {e}");
        }
    }
}

#[test]
fn p_extensions_and_unramified_covers_have_trivial_lo() {
    // Artin–Schreier over F_9 with P = F_3², and E = O(-∞)
    let gens = vec![map(1, 1), map(1, 3)];
    let c = build_cover(9, &gens).unwrap();
    let minus_inf = DivisorSpec {
        infinity: -1,
        points: vec![],
    };
    for psi in Psi::irreducibles(c.group()).unwrap() {
        let lo = LoInput::P1 {
            q: 9,
            generators: gens.clone(),
            divisor: minus_inf.clone(),
        };
        assert_eq!(predict(&input(9, 9, psi.spec(), lo)).lo_exponent, Some(0));
    }
    let trivial = build_cover(7, &[]).unwrap();
    let lo = LoInput::P1 {
        q: 7,
        generators: vec![],
        divisor: DivisorSpec {
            infinity: -3,
            points: vec![],
        },
    };
    assert_eq!(
        predict(&input(7, 1, Psi::trivial(trivial.group()).spec(), lo)).lo_exponent,
        Some(0)
    );
}

#[test]
fn cover_spec_and_p1_sources_agree() {
    let c = build_cover(5, &[map(4, 0)]).unwrap();
    let d = p1_oracle::GDivisor::from_spec(c.field(), &minus_branch_points()).unwrap();
    let bundle = c.line_bundle(&d).unwrap();
    for psi in Psi::irreducibles(c.group()).unwrap() {
        let a = predict(&input(
            5,
            2,
            psi.spec(),
            LoInput::Cover {
                cover: c.data().spec(),
                bundle: bundle.clone(),
            },
        ));
        let b = predict(&input(
            5,
            2,
            psi.spec(),
            LoInput::P1 {
                q: 5,
                generators: vec![map(4, 0)],
                divisor: minus_branch_points(),
            },
        ));
        assert_eq!(a, b);
    }
}

#[test]
fn wild_ramification_beyond_weak_is_rejected() {
    // the Artin–Schreier cover of F_5 with E = O(-2∞) violates n ≡ -1 mod |P|
    let lo = LoInput::P1 {
        q: 5,
        generators: vec![map(1, 1)],
        divisor: DivisorSpec {
            infinity: -2,
            points: vec![],
        },
    };
    let psi = PsiSpec {
        degree: 1,
        values: vec![CycNumber::one(1); 5],
    };
    assert!(predict_main(&input(5, 5, psi.clone(), lo)).is_err());
    // the cover has the wrong group order
    let lo = LoInput::P1 {
        q: 5,
        generators: vec![map(1, 1)],
        divisor: DivisorSpec {
            infinity: -1,
            points: vec![],
        },
    };
    assert!(predict_main(&input(5, 3, psi, lo)).is_err());
}

#[test]
fn classical_shape() {
    // G = 1, ψ = 1, L = K: exponent = vol + v(Reg) + length Sha
    let lo = LoInput::P1 {
        q: 5,
        generators: vec![],
        divisor: DivisorSpec {
            infinity: -1,
            points: vec![],
        },
    };
    let mut i = input(
        5,
        1,
        PsiSpec {
            degree: 1,
            values: vec![CycNumber::one(1)],
        },
        lo,
    );
    i.r_alg = 2;
    i.regulator = vec![
        vec![GramEntry::Integer(10), GramEntry::Rational("5/3".into())],
        vec![GramEntry::Rational("5/3".into()), GramEntry::Integer(15)],
    ];
    i.sha_length = 4;
    let p = predict(&i);
    // det = 150 - 25/9 = 1325/9 = 5²·53/9
    assert_eq!(p.breakdown.regulator, 2);
    assert_eq!(p.breakdown.group_power, 0);
    assert_eq!(p.exponent, -4 + 2 + 4);
}

#[test]
fn cyclotomic_regulator_away_from_p() {
    let lo = LoInput::Exponent(0);
    let mut i = input(
        5,
        3,
        PsiSpec {
            degree: 1,
            values: vec![CycNumber::one(1); 3],
        },
        lo,
    );
    i.lambda = LambdaSpec::new(7, 1).unwrap();
    i.r_alg = 1;
    let x = &CycNumber::from_int(3, 3) + &CycNumber::zeta_power(3, 1);
    let y = x.conj();
    let vx = bsd_assembler::lambda_valuation(&x, &i.lambda).unwrap();
    i.regulator = vec![vec![GramEntry::Cyclotomic(&x * &x)]];
    let a = predict(&i);
    i.regulator = vec![vec![GramEntry::Cyclotomic(&y * &y)]];
    let b = predict(&i);
    assert_eq!(a.breakdown.regulator, 2 * vx);
    // exactly one of the two conjugates lies in λ
    assert_eq!(a.breakdown.regulator + b.breakdown.regulator, 2);
    assert_eq!(a.breakdown.volume, 0);
}

#[test]
fn input_json_round_trip() {
    let lo = LoInput::P1 {
        q: 5,
        generators: vec![map(4, 0)],
        divisor: minus_branch_points(),
    };
    let i = input(
        5,
        2,
        PsiSpec {
            degree: 1,
            values: vec![CycNumber::one(1), CycNumber::from_int(1, -1)],
        },
        lo,
    );
    let json = serde_json::to_string(&i).unwrap();
    let back: GlobalArithmeticInput = serde_json::from_str(&json).unwrap();
    assert_eq!(back, i);
    let p = predict(&i);
    let back: Prediction = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
    assert_eq!(back, p);
}
