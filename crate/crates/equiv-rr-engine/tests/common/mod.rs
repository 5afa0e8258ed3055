//! Covers `P¹ → P¹/G` for subgroups `G` of the affine group `x ↦ ax + b` over
//! `F_q`, built from the action on points, together with the Brauer character
//! of `χ(O(D))` for `G`-invariant divisors `D`, computed from the explicit
//! basis `x^i / h` of the Riemann–Roch spaces.

#![allow(dead_code)]

use std::collections::BTreeSet;

use equiv_rr_engine::{BundleData, CoverData};
use exact_algebra::{root_of_unity_lift, CycNumber, Fe, GaloisField};
use group_rep::{ClassFunction, FiniteGroup, Subgroup};
use ramification::{descent_exponent, BundleStalk, LocalDatum};

pub struct AffineCover {
    pub cover: CoverData,
    pub group: FiniteGroup,
    pub pairs: Vec<(Fe, Fe)>,
    pub field: GaloisField,
    /// Orbits of `G` on `F_q` with their stabilizer orders.
    pub orbits: Vec<(Vec<Fe>, usize)>,
}

/// `G` acting on `P¹` over `k = F_{q^s}`; `pairs[x] = (a, b)` for `x ∈ G`.
pub fn affine_cover(
    group: &FiniteGroup,
    pairs: &[(Fe, Fe)],
    field: &GaloisField,
    s: u32,
) -> AffineCover {
    let p = field.characteristic();
    let k = GaloisField::conway(p, field.degree() * s).unwrap();
    let act = |x: usize, c: Fe| field.add(field.mul(pairs[x].0, c), pairs[x].1);
    let all: Vec<usize> = group.elements().collect();
    let wild: Vec<usize> = group.elements().filter(|&x| pairs[x].0 == 1).collect();
    let e = (group.order() / wild.len()) as u64;
    let c0 = group
        .elements()
        .find(|&x| group.element_order(x) == e)
        .unwrap();
    let tame = group.closure(&[c0]);
    let filtration = if wild.len() > 1 {
        vec![all.len(), wild.len(), 1]
    } else {
        vec![all.len(), 1]
    };
    // at ∞ the tame character is `a`
    let theta = field.embed_into(&k, pairs[c0].0).unwrap();
    let mut places = Vec::new();
    if all.len() > 1 {
        let d =
            LocalDatum::new(group, &all, &wild, &tame, &k, c0, theta, Some(filtration)).unwrap();
        places.push((d, 1));
    }
    let mut seen = BTreeSet::new();
    let mut orbits: Vec<(Vec<Fe>, usize)> = Vec::new();
    for c in field.elements() {
        if !seen.insert(c) {
            continue;
        }
        let orbit: BTreeSet<Fe> = group.elements().map(|x| act(x, c)).collect();
        seen.extend(orbit.iter().copied());
        let stab: Vec<usize> = group.elements().filter(|&x| act(x, c) == c).collect();
        if stab.len() > 1 {
            let gen = *stab
                .iter()
                .find(|&&x| group.element_order(x) == stab.len() as u64)
                .unwrap();
            // at a finite point the tame character is `a⁻¹`
            let theta = field
                .embed_into(&k, field.inv(pairs[gen].0).unwrap())
                .unwrap();
            let d = LocalDatum::new(
                group,
                &stab,
                &[0],
                &stab,
                &k,
                gen,
                theta,
                Some(vec![stab.len(), 1]),
            )
            .unwrap();
            places.push((d, 1));
        }
        orbits.push((orbit.into_iter().collect(), stab.len()));
    }
    // ramified orbits go in place order after ∞
    orbits.sort_by_key(|(o, st)| (*st == 1, o[0]));
    let cover = CoverData::new(group, p, field.degree() * s, 0, places).unwrap();
    AffineCover {
        cover,
        group: group.clone(),
        pairs: pairs.to_vec(),
        field: field.clone(),
        orbits,
    }
}

/// The same construction for a subgroup, over its standalone group.
pub fn restricted_cover(ac: &AffineCover, h: &Subgroup, s: u32) -> AffineCover {
    let pairs: Vec<(Fe, Fe)> = (0..h.order()).map(|i| ac.pairs[h.to_parent(i)]).collect();
    affine_cover(h.group(), &pairs, &ac.field, s)
}

/// `D = n_∞ ∞ + Σ_{c ∈ F_q} m(c) c`, with `m` indexed by element code.
#[derive(Debug, Clone)]
pub struct Divisor {
    pub at_infinity: i64,
    pub finite: Vec<i64>,
}

impl Divisor {
    /// Multiplicity `m_O` on each orbit of `ac`, in orbit order.
    pub fn from_orbits(ac: &AffineCover, at_infinity: i64, mult: &[i64]) -> Self {
        let mut finite = vec![0; ac.field.order() as usize];
        for ((orbit, _), &m) in ac.orbits.iter().zip(mult) {
            for &c in orbit {
                finite[c as usize] = m;
            }
        }
        Divisor {
            at_infinity,
            finite,
        }
    }

    pub fn degree(&self) -> i64 {
        self.at_infinity + self.finite.iter().sum::<i64>()
    }
}

/// `O(D)` as an equivariant line bundle for the cover `ac`.
pub fn line_bundle(ac: &AffineCover, d: &Divisor) -> BundleData {
    let g = ac.group.order();
    let mut stalks = Vec::new();
    let mut deg_inv = 0;
    if g > 1 {
        stalks.push(BundleStalk::line(d.at_infinity));
    }
    deg_inv += descent_exponent(d.at_infinity, g);
    for (orbit, stab) in &ac.orbits {
        let m = d.finite[orbit[0] as usize];
        if *stab > 1 {
            stalks.push(BundleStalk::line(m));
        }
        deg_inv += descent_exponent(m, *stab);
    }
    BundleData::from_invariant_degree(1, stalks, 0, deg_inv)
}

pub fn direct_sum(a: &BundleData, b: &BundleData) -> BundleData {
    let stalks = a
        .stalks
        .iter()
        .zip(&b.stalks)
        .map(|(x, y)| BundleStalk::new(x.exponents.iter().chain(&y.exponents).copied().collect()))
        .collect();
    BundleData::new(a.rank + b.rank, stalks, a.invariant_chi + b.invariant_chi)
}

/// Brauer character of `H⁰ - H¹` of `O(D)`. With `N = deg D`, the space is
/// spanned by `x^i / h` for `0 <= i <= N`, where `h` is the product of the
/// orbit polynomials; `(a, b)` scales `x^i` by `a^{-i}` modulo lower terms
/// and `1/h` by `a^{deg h}`. For `N < -1` the sum runs backwards with sign.
pub fn oracle_chi(ac: &AffineCover, d: &Divisor) -> ClassFunction {
    let p = ac.field.characteristic();
    let m = ac.group.regular_classes(p).conductor;
    let n = d.degree();
    let shift: i64 = d.finite.iter().sum();
    ClassFunction::from_fn(&ac.group, p, |x| {
        let z = root_of_unity_lift(&ac.field, ac.pairs[x].0, m).unwrap();
        let zinv = z.pow(m - 1);
        let mut acc = CycNumber::zero(m);
        let (range, sign): (Vec<i64>, i64) = if n >= -1 {
            ((0..=n).collect(), 1)
        } else {
            ((n + 1..0).collect(), -1)
        };
        for i in range {
            acc = &acc + &zinv.pow(i.rem_euclid(m as i64) as u64).scale_int(sign);
        }
        &acc * &z.pow(shift.rem_euclid(m as i64) as u64)
    })
    .unwrap()
}
