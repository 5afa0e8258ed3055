use bsd_assembler::{
    predict_coprime, predict_main, CoprimeData, GlobalArithmeticInput, GramEntry, Hypotheses,
    LieInput, LoInput, Z2Entry,
};
use exact_algebra::CycNumber;
use proptest::prelude::*;
use psi_part::{LambdaSpec, PsiSpec};

const PRIMES: [u32; 5] = [2, 3, 5, 7, 11];

/// `v_ℓ(n)` for a non-zero integer.
fn val(mut n: i64, ell: i64) -> i64 {
    assert_ne!(n, 0);
    let mut v = 0;
    while n % ell == 0 {
        n /= ell;
        v += 1;
    }
    v
}

/// `Uᵀ·diag(d)·U` for the unimodular upper-triangular `U` with the given
/// entries above the diagonal, so the determinant is `Π d_i`.
fn gram(diag: &[i64], upper: &[i64]) -> Vec<Vec<i64>> {
    let r = diag.len();
    let mut u = vec![vec![0i64; r]; r];
    let mut k = 0;
    for (i, row) in u.iter_mut().enumerate() {
        row[i] = 1;
        for x in row.iter_mut().skip(i + 1) {
            *x = if upper.is_empty() {
                0
            } else {
                upper[k % upper.len()]
            };
            k += 1;
        }
    }
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| (0..r).map(|m| u[m][i] * diag[m] * u[m][j]).sum())
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone)]
struct Case {
    p: u32,
    s: u32,
    ell: u32,
    ramification: u32,
    group_order: u64,
    deg_psi: i64,
    dim_a: i64,
    genus_k: i64,
    deg_z1: i64,
    deg_lie: i64,
    z2: Vec<(Vec<i64>, u32)>,
    lo: i64,
    diag: Vec<i64>,
    upper: Vec<i64>,
    sha: i64,
}

fn case_strategy() -> impl Strategy<Value = Case> {
    (
        (
            0..PRIMES.len(),
            1u32..3,
            0..PRIMES.len(),
            1u32..3,
            1u64..40,
            1i64..4,
        ),
        (0i64..3, 0i64..3, 0i64..6, -6i64..3),
        prop::collection::vec((prop::collection::vec(0i64..3, 0..3), 1u32..3), 0..3),
        (
            -3i64..4,
            prop::collection::vec(1i64..60, 0..4),
            prop::collection::vec(-3i64..4, 0..6),
            0i64..5,
        ),
    )
        .prop_map(
            |(
                (pi, s, li, ramification, group_order, deg_psi),
                (dim_a, genus_k, deg_z1, deg_lie),
                z2,
                (lo, diag, upper, sha),
            )| Case {
                p: PRIMES[pi],
                s,
                ell: PRIMES[li],
                ramification,
                group_order,
                deg_psi,
                dim_a,
                genus_k,
                deg_z1,
                deg_lie,
                z2,
                lo,
                diag,
                upper,
                sha,
            },
        )
}

fn build(c: &Case) -> GlobalArithmeticInput {
    let g = gram(&c.diag, &c.upper);
    GlobalArithmeticInput {
        constant_field_order: (c.p as u64).pow(c.s),
        group_order: c.group_order,
        dim_a: c.dim_a,
        genus_k: c.genus_k,
        deg_z1: c.deg_z1,
        z2: c
            .z2
            .iter()
            .map(|(r, f)| Z2Entry::Exponents {
                r: r.clone(),
                residue_order: (c.p as u64).pow(*f),
            })
            .collect(),
        lie: LieInput::Degree { degree: c.deg_lie },
        psi: PsiSpec {
            degree: c.deg_psi,
            values: vec![CycNumber::from_int(1, c.deg_psi)],
        },
        lambda: LambdaSpec::new(c.ell, c.ramification).unwrap(),
        lo: Some(LoInput::Exponent(c.lo)),
        regulator: g
            .iter()
            .map(|row| row.iter().map(|&x| GramEntry::Integer(x)).collect())
            .collect(),
        r_alg: c.diag.len(),
        sha_length: c.sha,
        hypotheses: Hypotheses {
            sha_finite: true,
            weakly_ramified: Some(true),
            tame_over_z2: Some(true),
            no_ell_torsion: Some(true),
        },
        coprime: None,
    }
}

/// The assembled exponent from the formula, term by term.
fn expected(c: &Case) -> i64 {
    let e = c.ramification as i64;
    let ell = c.ell as i64;
    let reg: i64 = c.diag.iter().map(|&d| val(d, ell)).sum::<i64>() * e;
    let g = c.diag.len() as i64 * val(c.group_order as i64, ell) * e;
    let mut total = reg - g + c.sha;
    if c.ell == c.p {
        let vol = c.dim_a * (1 - c.genus_k - c.deg_z1) + c.deg_lie;
        let z2: i64 =
            c.z2.iter()
                .map(|(r, f)| r.iter().filter(|&&x| x == 0).count() as i64 * *f as i64)
                .sum();
        total += c.deg_psi * (vol * c.s as i64 - z2) * e + c.lo * e;
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn exponent_is_the_formula_and_the_breakdown_sum(c in case_strategy()) {
        let p = predict_main(&build(&c)).unwrap();
        prop_assert_eq!(p.exponent, p.breakdown.total());
        prop_assert_eq!(p.exponent, expected(&c));
    }

    #[test]
    fn sha_is_monotone(c in case_strategy()) {
        let mut i = build(&c);
        let a = predict_main(&i).unwrap().exponent;
        i.sha_length += 1;
        prop_assert_eq!(predict_main(&i).unwrap().exponent, a + 1);
    }

    #[test]
    fn coprime_reduces_to_main(c in case_strategy(), extra in (0i64..3, 0i64..3, prop::collection::vec(0i64..3, 0..3))) {
        let mut i = build(&c);
        prop_assume!(i.group_order % c.ell as u64 != 0);
        let main = predict_main(&i).unwrap().exponent;
        prop_assert_eq!(predict_coprime(&i).unwrap().exponent, main);
        i.coprime = Some(CoprimeData { torsion: 0, dual_torsion: 0, local_components: vec![0; extra.2.len()] });
        prop_assert_eq!(predict_coprime(&i).unwrap().exponent, main);
        i.coprime = Some(CoprimeData { torsion: extra.0, dual_torsion: extra.1, local_components: extra.2.clone() });
        let shift = extra.2.iter().sum::<i64>() - extra.0 - extra.1;
        prop_assert_eq!(predict_coprime(&i).unwrap().exponent, main + shift);
    }

    /// Heights over `L` are `|G|` times heights over `K`, so with `ψ = 1` and
    /// no local terms the `L`-level assembly reproduces the `K`-level one.
    #[test]
    fn group_scaling_reproduces_the_base_level(c in case_strategy()) {
        let mut k_level = c.clone();
        k_level.group_order = 1;
        k_level.deg_psi = 1;
        k_level.lo = 0;
        let base = predict_main(&build(&k_level)).unwrap().exponent;
        let mut l_level = build(&k_level);
        l_level.group_order = c.group_order;
        let scale = c.group_order as i64;
        l_level.regulator = gram(&c.diag, &c.upper)
            .iter()
            .map(|row| row.iter().map(|&x| GramEntry::Integer(x * scale)).collect())
            .collect();
        let p = predict_main(&l_level).unwrap();
        prop_assert_eq!(p.breakdown.regulator + p.breakdown.group_power, predict_main(&build(&k_level)).unwrap().breakdown.regulator);
        prop_assert_eq!(p.exponent, base);
    }
}

#[test]
fn gram_helper_has_the_product_determinant() {
    let g = gram(&[2, 3, 5], &[1, -2, 3]);
    let det = bsd_assembler::gram_determinant(
        &g.iter()
            .map(|r| r.iter().map(|&x| CycNumber::from_int(1, x)).collect())
            .collect::<Vec<_>>(),
        3,
    )
    .unwrap();
    assert_eq!(det.to_i64(), Some(30));
    assert_eq!(g[0][1], g[1][0]);
}
