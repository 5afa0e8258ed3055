use exact_algebra::{Fe, FqMatrix, GaloisField, Poly, PolyRing};
use group_rep::{ClassFunction, MatrixModule};
use p1_oracle::{
    build_cover, field_of_order, h0_with_action, h1_with_action, local_freeness_table, rr_space,
    verify_cover, AffineMap, GDivisor, P1ClosedPoint, P1Cover,
};
use proptest::prelude::*;

const FIELDS: [(u32, u64); 7] = [(2, 1), (3, 2), (5, 4), (4, 3), (7, 6), (9, 8), (8, 7)];

fn random_cover(idx: usize, gens: &[(u64, u64)]) -> P1Cover {
    let (q, e) = FIELDS[idx % FIELDS.len()];
    let f = field_of_order(q).unwrap();
    let maps: Vec<AffineMap> = gens
        .iter()
        .map(|&(k, b)| AffineMap {
            a: f.exp(((k % e) * (q as u64 - 1) / e) as i64),
            b: (b % q as u64) as u32,
        })
        .collect();
    build_cover(q, &maps).unwrap()
}

/// `O(D)` with `n_∞ ≡ -1 mod |P_∞|`, random multiplicities on orbits of
/// rational points and optionally on the orbit of a quadratic point.
fn random_divisor(
    c: &P1Cover,
    t: i64,
    mult: &[i64],
    quadratic: Option<(u32, u32, i64)>,
) -> GDivisor {
    let f = c.field();
    let wild = c.maps().iter().filter(|m| m.a == 1).count() as i64;
    let mut d = if c.group().order() > 1 {
        GDivisor::from_entries([(P1ClosedPoint::Infinity, wild * t - 1)])
    } else {
        GDivisor::from_entries([(P1ClosedPoint::Infinity, t)])
    };
    for (i, &m) in mult.iter().enumerate() {
        let w = P1ClosedPoint::rational(f, (i as u32 * 3 + 1) % f.order());
        if d.coefficient(&w) == 0 {
            for x in c.orbit(&w) {
                d.add_at(x, m);
            }
        }
    }
    if let Some((b, c0, m)) = quadratic {
        let poly = Poly::new(vec![c0 % f.order(), b % f.order(), 1]);
        if let Ok(w) = P1ClosedPoint::finite(f, poly) {
            for x in c.orbit(&w) {
                d.add_at(x, m);
            }
        }
    }
    d
}

fn cover_strategy() -> impl Strategy<Value = (usize, Vec<(u64, u64)>)> {
    (
        0..FIELDS.len(),
        prop::collection::vec((0u64..16, 0u64..16), 1..3),
    )
}

fn divisor_strategy() -> impl Strategy<Value = (i64, Vec<i64>, Option<(u32, u32, i64)>)> {
    (
        -3i64..3,
        prop::collection::vec(-2i64..3, 0..3),
        prop::option::of((0u32..9, 1u32..9, -2i64..3)),
    )
}

/// `(σf)(y) = f(σ⁻¹y)` at rational points off the support.
fn action_matches_evaluation(c: &P1Cover, d: &GDivisor) -> bool {
    let f = c.field();
    let ring = PolyRing::new(f);
    let basis = rr_space(f, d).unwrap();
    let h0 = h0_with_action(c, d).unwrap();
    let eval = |b: &p1_oracle::RationalFunction, y: Fe| {
        f.div(ring.eval(&b.num, y), ring.eval(&b.den, y)).unwrap()
    };
    for y in f
        .elements()
        .filter(|&y| basis.first().is_some_and(|b| ring.eval(&b.den, y) != 0))
    {
        for x in c.group().elements() {
            let m = h0.module.matrix(x);
            let yy = c.map(x).inverse(f).apply(f, y);
            for (i, bi) in basis.iter().enumerate() {
                let lhs = (0..basis.len()).fold(0, |acc, j| {
                    f.add(acc, f.mul(m.get(j, i), eval(&basis[j], y)))
                });
                if lhs != eval(bi, yy) {
                    return false;
                }
            }
        }
    }
    true
}

/// `H¹(O(D))` by Čech cohomology for the `G`-stable cover `{P¹ - ∞, P¹ - S}`,
/// `S` the finite support together with the orbit of `0`, truncated to
/// `V = {g / h_S^K : deg g < L}`.
fn cech_h1(c: &P1Cover, d: &GDivisor) -> (usize, ClassFunction) {
    let f = c.field();
    let ring = PolyRing::new(f);
    let mut s_points: Vec<P1ClosedPoint> = d
        .support()
        .filter(|(w, _)| **w != P1ClosedPoint::Infinity)
        .map(|(w, _)| w.clone())
        .collect();
    for w in c.orbit(&P1ClosedPoint::rational(f, 0)) {
        if !s_points.contains(&w) {
            s_points.push(w);
        }
    }
    let h_s = s_points.iter().fold(Poly::one(), |acc, w| match w {
        P1ClosedPoint::Finite(p) => ring.mul(&acc, p),
        P1ClosedPoint::Infinity => acc,
    });
    let deg_s = h_s.degree().unwrap() as i64;
    let n_inf = d.at_infinity();
    let k = d.support().map(|(_, n)| n.abs()).sum::<i64>() + 2;
    let l = (k * deg_s
        + d.support()
            .map(|(w, n)| n.abs() * w.degree() as i64)
            .sum::<i64>()
        + 2) as usize;
    let (plus, minus) = d.finite_parts(&ring);
    let h_k = ring.pow(&h_s, k as u64);
    let mut span: Vec<Vec<Fe>> = Vec::new();
    let base = ring.div_rem(&ring.mul(&minus, &h_k), &plus).unwrap();
    assert!(base.1.is_zero());
    for i in 0.. {
        let g = ring.mul(&Poly::monomial(1, i), &base.0);
        if g.degree().unwrap() >= l {
            break;
        }
        let mut v = g.coeffs().to_vec();
        v.resize(l, 0);
        span.push(v);
    }
    for j in 0..l as i64 {
        if j <= k * deg_s + n_inf {
            let mut v = vec![0; l];
            v[j as usize] = 1;
            span.push(v);
        }
    }
    let w = FqMatrix::from_rows(f, &span).unwrap();
    let (r, pivots) = w.rref();
    let free: Vec<usize> = (0..l).filter(|j| !pivots.contains(j)).collect();
    let reduce = |mut v: Vec<Fe>| -> Vec<Fe> {
        for (row, &p) in pivots.iter().enumerate() {
            let c0 = v[p];
            if c0 != 0 {
                for (j, x) in v.iter_mut().enumerate().take(l) {
                    *x = f.sub(*x, f.mul(c0, r.get(row, j)));
                }
            }
        }
        free.iter().map(|&j| v[j]).collect()
    };
    let mats: Vec<FqMatrix> = c
        .maps()
        .iter()
        .map(|sigma| {
            let s = sigma.inverse(f);
            let moved = s.substitute(&ring, &h_s);
            let scale = f.pow(f.inv(moved.leading()).unwrap(), k);
            let powers = s.powers(f, l - 1);
            let mut m = FqMatrix::zeros(f, free.len(), free.len());
            for (col, &j) in free.iter().enumerate() {
                let image: Vec<Fe> = powers[j].iter().map(|&x| f.mul(x, scale)).collect();
                for (row, x) in reduce(image).into_iter().enumerate() {
                    m.set(row, col, x);
                }
            }
            m
        })
        .collect();
    let module = MatrixModule::from_element_fn(c.group(), f, |g| mats[g].clone()).unwrap();
    (module.dim(), module.brauer_character().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_agrees_with_engine((idx, gens) in cover_strategy(), (t, mult, quad) in divisor_strategy()) {
        let c = random_cover(idx, &gens);
        let d = random_divisor(&c, t, &mult, quad);
        let r = verify_cover(&c, &d, true).unwrap();
        prop_assert!(r.passed(), "{} on |G| = {}: {:?}", d, c.group().order(), r.engine);
    }

    #[test]
    fn action_is_substitution((idx, gens) in cover_strategy(), (t, mult, quad) in divisor_strategy()) {
        let c = random_cover(idx, &gens);
        let d = random_divisor(&c, t + 1, &mult, quad);
        prop_assert!(action_matches_evaluation(&c, &d));
    }

    #[test]
    fn serre_duality_matches_cech((idx, gens) in cover_strategy(), (t, mult, quad) in divisor_strategy()) {
        let c = random_cover(idx, &gens);
        let d = random_divisor(&c, t - 1, &mult, quad);
        let h1 = h1_with_action(&c, &d).unwrap();
        let (dim, chi) = cech_h1(&c, &d);
        prop_assert_eq!(dim, (-d.degree() - 1).max(0) as usize);
        prop_assert_eq!(h1.dim(), dim);
        prop_assert_eq!(h1.brauer_character().unwrap(), chi);
    }

    #[test]
    fn filtration_and_local_freeness((idx, gens) in cover_strategy()) {
        let c = random_cover(idx, &gens);
        for o in c.ramified() {
            prop_assert_eq!(o.filtration[0], o.inertia.len());
            prop_assert_eq!(o.filtration.get(1).copied().unwrap_or(1), o.wild.len());
            prop_assert_eq!(o.filtration.get(2).copied().unwrap_or(1), 1);
            prop_assert!(o.filtration.windows(2).all(|w| w[0] >= w[1]));
        }
        for e in local_freeness_table(&c).unwrap() {
            prop_assert_eq!(e.projective, e.expected, "{} n = {}", e.point, e.n);
        }
    }
}

#[test]
fn cech_reproduces_a_nontrivial_h1() {
    let f = GaloisField::prime(7).unwrap();
    let c = build_cover(7, &[AffineMap { a: 3, b: 0 }]).unwrap();
    let d = GDivisor::from_entries([
        (P1ClosedPoint::Infinity, -4),
        (P1ClosedPoint::rational(&f, 0), -1),
    ]);
    let (dim, chi) = cech_h1(&c, &d);
    assert_eq!(dim, 4);
    assert_eq!(
        h1_with_action(&c, &d).unwrap().brauer_character().unwrap(),
        chi
    );
}
