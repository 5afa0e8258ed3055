//! The equivariant Riemann–Roch formula
//! `χ_{kG}(E) = -rk(E)[N(π)] + [W_G(E)] + Ind_1^G χ_k(E^G)` in `K0(kG) ⊗ Q`.

use exact_algebra::BigRational;
use group_rep::{pim_multiplicities, stable_equal, ClassFunction, K0Class, Subgroup};
use num_bigint::BigInt;
use num_traits::Zero;
use ramification::mw_class_over;

use crate::cover::{to_i64, to_integer, BundleData, CoverData, RamifiedPlace};
use crate::error::{EngineError, Result};

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `χ_k` of a rank-`r` bundle of degree `d` on a curve of genus `g`.
pub fn chi_hrr(rank: i64, genus: i64, degree: i64) -> i64 {
    rank * (1 - genus) + degree
}

/// `Ind_{I_w}^G [M_w(j)]` over `k` for `j = 0..|C_w|`.
fn induced_mw(cover: &CoverData, place: &RamifiedPlace) -> Result<Vec<ClassFunction>> {
    let d = place.datum();
    (0..d.tame_order() as i64)
        .map(|j| {
            let m = mw_class_over(d, j, cover.base_degree())?;
            Ok(ClassFunction::induce(d.inertia(), &m.function)?)
        })
        .collect()
}

/// `[N(π)] = (1/|G|) Σ_w |P_w| Σ_{j=1}^{e_w-1} j [Ind_{I_w}^G M_w(j)]`.
pub fn n_pi(cover: &CoverData) -> Result<K0Class> {
    let g = cover.group();
    let p = cover.characteristic();
    let mut acc = ClassFunction::zero(g, p);
    for pl in cover.places() {
        let d = pl.datum();
        let mw = induced_mw(cover, pl)?;
        let mut local = ClassFunction::zero(g, p);
        for (j, m) in mw.iter().enumerate().skip(1) {
            local = local.add(&m.scale_int(j as i64))?;
        }
        let weight = pl.count() * rational(d.wild_order() as i64) / rational(g.order() as i64);
        acc = acc.add(&local.scale(&weight))?;
    }
    Ok(K0Class::formal(acc))
}

/// `[W_G(E)] = Σ_w (1/[G:I_w]) Σ_i Σ_{j=1}^{l_{w,i}} [Ind_{I_w}^G M_w(-j)]`.
pub fn w_g(cover: &CoverData, bundle: &BundleData) -> Result<K0Class> {
    let g = cover.group();
    let p = cover.characteristic();
    let ls = bundle.l_exponents(cover)?;
    let mut acc = ClassFunction::zero(g, p);
    for (pl, l) in cover.places().iter().zip(&ls) {
        let d = pl.datum();
        let e = d.tame_order() as i64;
        let mw = induced_mw(cover, pl)?;
        let mut local = ClassFunction::zero(g, p);
        for &li in l {
            for j in 1..=li {
                local = local.add(&mw[(-j).rem_euclid(e) as usize])?;
            }
        }
        let weight = pl.count() * rational(d.inertia_order() as i64) / rational(g.order() as i64);
        acc = acc.add(&local.scale(&weight))?;
    }
    Ok(K0Class::formal(acc))
}

/// `Σ_w deg_k(w) Σ_i (|P_w| (l_{w,i} + 1) - 1)`.
pub fn ramification_degree(cover: &CoverData, bundle: &BundleData) -> Result<BigRational> {
    let ls = bundle.l_exponents(cover)?;
    let mut acc = BigRational::zero();
    for (pl, l) in cover.places().iter().zip(&ls) {
        let wp = pl.datum().wild_order() as i64;
        let s: i64 = l.iter().map(|&li| wp * (li + 1) - 1).sum();
        acc += pl.geometric_points(cover.base_degree()) * rational(s);
    }
    Ok(acc)
}

/// `deg E = |G| deg E^G + Σ_w deg_k(w) Σ_i (|P_w| (l_{w,i} + 1) - 1)`.
pub fn bundle_degree(cover: &CoverData, bundle: &BundleData) -> Result<BigRational> {
    let base = rational(cover.group().order() as i64 * bundle.invariant_degree(cover.genus()));
    Ok(base + ramification_degree(cover, bundle)?)
}

/// `χ_k(E) = rk(E) χ_k(O_{X_L}) + deg E`, the value of `χ_{kG}(E)` at the identity.
pub fn expected_dimension(cover: &CoverData, bundle: &BundleData) -> Result<BigRational> {
    let chi_o = BigRational::from_integer(cover.structure_sheaf_chi()?);
    Ok(chi_o * rational(bundle.rank as i64) + bundle_degree(cover, bundle)?)
}

/// The three terms of the formula and their sum.
#[derive(Debug, Clone)]
pub struct EulerCharacteristic {
    pub class: K0Class,
    pub n_pi: K0Class,
    pub w_g: K0Class,
    pub invariant_chi: i64,
    /// Wild places are present, so the semilinear stalk shape is taken on trust.
    pub stalk_shape_assumed: bool,
    /// Multiplicities of the projective indecomposables over `k̄`, when `G`
    /// has a normal Sylow subgroup with cyclic complement.
    pub multiplicities: Option<Vec<BigInt>>,
}

/// `χ_{kG}(E)` with its breakdown. Integrality of the dimension and of the
/// decomposition into projective indecomposables is enforced.
pub fn euler_characteristic(cover: &CoverData, bundle: &BundleData) -> Result<EulerCharacteristic> {
    bundle.validate(cover)?;
    let g = cover.group();
    let p = cover.characteristic();
    let n = n_pi(cover)?;
    let w = w_g(cover, bundle)?;
    let base = K0Class::regular(g, p).scale(&rational(bundle.invariant_chi));
    let class = w.add(&base)?.sub(&n.scale(&rational(bundle.rank as i64)))?;
    let dim = class.function.at_identity().to_rational().ok_or_else(|| {
        EngineError::NotIntegral(format!(
            "dimension {} is irrational",
            class.function.at_identity()
        ))
    })?;
    to_integer(&dim, "dim χ_{kG}(E)")?;
    let multiplicities = match decomposition_complement(cover) {
        Some(c) => {
            let (_, mult) = pim_multiplicities(&class, &c)?;
            Some(
                mult.iter()
                    .map(|m| to_integer(m, "projective multiplicity"))
                    .collect::<Result<Vec<_>>>()?,
            )
        }
        None => None,
    };
    Ok(EulerCharacteristic {
        class,
        n_pi: n,
        w_g: w,
        invariant_chi: bundle.invariant_chi,
        stalk_shape_assumed: cover.places().iter().any(|pl| pl.is_wild()),
        multiplicities,
    })
}

/// `χ_{kG}(E)` as a class in `K0(kG) ⊗ Q`.
pub fn euler_char(cover: &CoverData, bundle: &BundleData) -> Result<K0Class> {
    Ok(euler_characteristic(cover, bundle)?.class)
}

/// A cyclic complement of a normal Sylow `p`-subgroup of `G`, if any.
fn decomposition_complement(cover: &CoverData) -> Option<Subgroup> {
    let g = cover.group();
    let sylow = g.sylow(cover.characteristic());
    if !sylow.is_normal() {
        return None;
    }
    g.cyclic_subgroups_of_order((g.order() / sylow.order()) as u64)
        .into_iter()
        .next()
}

/// `χ_{kG}(π*F(-Z_L))` for a bundle `F` on `X` and a reduced divisor `Z`
/// containing every ramified place, given by the indices of the ramified
/// places and the total degree of the unramified ones.
pub fn pullback_twist_chi(
    cover: &CoverData,
    rank_f: i64,
    degree_f: i64,
    z_places: &[usize],
    unramified_z_degree: i64,
) -> Result<K0Class> {
    if let Some(i) = (0..cover.places().len()).find(|i| !z_places.contains(i)) {
        return Err(EngineError::MissingRamifiedPlace(i));
    }
    let g = cover.group();
    let p = cover.characteristic();
    let mut acc = ClassFunction::zero(g, p);
    let mut deg_z = rational(unramified_z_degree);
    for (i, pl) in cover.places().iter().enumerate() {
        let d = pl.datum();
        let e = d.tame_order() as i64;
        let mw = induced_mw(cover, pl)?;
        let mut local = ClassFunction::zero(g, p);
        for j in 1..e {
            local =
                local.add(&mw[(-j).rem_euclid(e) as usize].scale_int(j * d.wild_order() as i64))?;
        }
        acc = acc.add(&local.scale(pl.count()))?;
        deg_z += cover.place_degree(i);
    }
    let twist = acc.scale(&(rational(rank_f) / rational(g.order() as i64)));
    let deg_z = to_i64(&deg_z, "deg Z")?;
    let base =
        ClassFunction::regular(g, p).scale_int(rank_f * (1 - cover.genus() - deg_z) + degree_f);
    Ok(K0Class::formal(twist.add(&base)?))
}

/// Both sides of `deg E - |G| deg E^G = Σ_w Σ_i (|P_w|(l_{w,i}+1) - 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeIdentity {
    pub lhs: BigRational,
    pub rhs: BigRational,
    /// `Σ_w Σ_i n_{w,i}` when every exponent satisfies `0 <= n < |I_w|`.
    pub normalized_rhs: Option<BigRational>,
}

impl DegreeIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
            && self
                .normalized_rhs
                .as_ref()
                .map_or(true, |n| *n == self.rhs)
    }
}

pub fn degree_identity(
    cover: &CoverData,
    bundle: &BundleData,
    degree_e: i64,
    invariant_degree: i64,
) -> Result<DegreeIdentity> {
    let lhs = rational(degree_e - cover.group().order() as i64 * invariant_degree);
    let rhs = ramification_degree(cover, bundle)?;
    let normalized = bundle.stalks.iter().zip(cover.places()).all(|(st, pl)| {
        st.exponents
            .iter()
            .all(|&n| n >= 0 && n < pl.datum().inertia_order() as i64)
    });
    let normalized_rhs = normalized.then(|| {
        bundle
            .stalks
            .iter()
            .zip(cover.places())
            .map(|(st, pl)| {
                pl.geometric_points(cover.base_degree()) * rational(st.exponents.iter().sum())
            })
            .sum()
    });
    Ok(DegreeIdentity {
        lhs,
        rhs,
        normalized_rhs,
    })
}

/// Comparison of the formula for `G` restricted to `H` with the formula for
/// `X_L` as an `H`-cover.
#[derive(Debug, Clone, PartialEq)]
pub struct MackeyReport {
    /// `c` with `Res [N(π_G)] - [N(π_H)] = c [kH]`, if stably equal.
    pub n_pi: Option<BigInt>,
    pub w_g: Option<BigInt>,
    /// `Res χ_{kG}(E) = χ_{kH}(E)` exactly.
    pub euler_char_restricts: bool,
}

impl MackeyReport {
    pub fn holds(&self) -> bool {
        self.n_pi.is_some() && self.w_g.is_some() && self.euler_char_restricts
    }
}

pub fn mackey_check(cover: &CoverData, bundle: &BundleData, h: &Subgroup) -> Result<MackeyReport> {
    let (hc, origins) = cover.restrict(h)?;
    let hb = bundle.restrict(cover, &hc, &origins)?;
    mackey_compare(cover, bundle, h, &hc, &hb)
}

/// Compare against an `H`-cover built independently.
pub fn mackey_compare(
    cover: &CoverData,
    bundle: &BundleData,
    h: &Subgroup,
    h_cover: &CoverData,
    h_bundle: &BundleData,
) -> Result<MackeyReport> {
    if h_cover.group() != h.group() {
        return Err(EngineError::InvalidCover(
            "H-cover is not over the standalone subgroup".into(),
        ));
    }
    let n_res = n_pi(cover)?.restrict(h)?;
    let w_res = w_g(cover, bundle)?.restrict(h)?;
    let n_h = n_pi(h_cover)?;
    let w_h = w_g(h_cover, h_bundle)?;
    let chi_res = euler_char(cover, bundle)?.restrict(h)?;
    let chi_h = euler_char(h_cover, h_bundle)?;
    Ok(MackeyReport {
        n_pi: stable_equal(&n_res, &n_h)?,
        w_g: stable_equal(&w_res, &w_h)?,
        euler_char_restricts: chi_res.function == chi_h.function,
    })
}
