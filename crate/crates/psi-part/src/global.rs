//! `ra_E(ψ)`, its closed forms, and valuations of `ρ^ψ` of Euler
//! characteristics.

use equiv_rr_engine::{BundleData, CoverData};
use exact_algebra::arith::{inv_mod, multiplicative_order, pow_mod};
use exact_algebra::{BigRational, CycNumber};
use group_rep::K0Class;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{PsiError, Result};
use crate::local::{m_from_multiplicities, theta_multiplicities};
use crate::psi::{LambdaSpec, Psi};

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn integral(r: BigRational, what: &str) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(PsiError::NotIntegral(format!("{what} = {r}")))
    }
}

fn check_group(cover: &CoverData, psi: &Psi) -> Result<()> {
    if cover.group() != psi.group() {
        return Err(PsiError::InvalidPsi(
            "ψ is a character of another group".into(),
        ));
    }
    Ok(())
}

/// `ra_E(ψ) = (1/|G|) Σ_w Σ_i (-|P_w| Σ_{j=1}^{|C_w|-1} j m(-j) + |I_w| Σ_{j=1}^{l_{w,i}} m(j))`,
/// the sum running over the ramified closed points of `X_L`.
pub fn ra_exact(cover: &CoverData, bundle: &BundleData, psi: &Psi) -> Result<BigRational> {
    check_group(cover, psi)?;
    let ls = bundle.l_exponents(cover)?;
    let mut acc = BigRational::zero();
    for (pl, l) in cover.places().iter().zip(&ls) {
        let d = pl.datum();
        let mult = theta_multiplicities(psi, d)?;
        let m = |j: i64| m_from_multiplicities(&mult, d, j) as i64;
        let e = d.tame_order() as i64;
        let conductor_term: i64 = (1..e).map(|j| j * m(-j)).sum();
        let mut local = 0i64;
        for &li in l {
            local += -(d.wild_order() as i64) * conductor_term
                + d.inertia_order() as i64 * (1..=li).map(m).sum::<i64>();
        }
        acc += pl.count() * rational(local);
    }
    Ok(acc / rational(cover.group().order() as i64))
}

/// `ra_E(ψ)`, which is an integer for weakly ramified covers and bundles
/// satisfying the stalk condition.
pub fn ra(cover: &CoverData, bundle: &BundleData, psi: &Psi) -> Result<BigInt> {
    integral(ra_exact(cover, bundle, psi)?, "ra_E(ψ)")
}

/// `E = π*F(-Z_L)` has exponent `-1` in every stalk.
fn check_pullback_twist(cover: &CoverData, bundle: &BundleData) -> Result<()> {
    bundle.validate(cover)?;
    if bundle
        .stalks
        .iter()
        .any(|st| st.exponents.iter().any(|&n| n != -1))
    {
        return Err(PsiError::HypothesisViolated(
            "bundle is not of the form π*F(-Z_L)".into(),
        ));
    }
    Ok(())
}

/// For `E = π*F(-Z_L)`: `(rk E/|G|) Σ_w Σ_{j=1}^{|C_w|-1} j |P_w| m_{ψ,w}(j)`.
pub fn ra_pullback_twist(cover: &CoverData, bundle: &BundleData, psi: &Psi) -> Result<BigInt> {
    check_group(cover, psi)?;
    check_pullback_twist(cover, bundle)?;
    let mut acc = BigRational::zero();
    for pl in cover.places() {
        let d = pl.datum();
        let mult = theta_multiplicities(psi, d)?;
        let s: i64 = (1..d.tame_order() as i64)
            .map(|j| j * m_from_multiplicities(&mult, d, j) as i64)
            .sum();
        acc += pl.count() * rational(s * d.wild_order() as i64);
    }
    integral(
        acc * rational(bundle.rank as i64) / rational(cover.group().order() as i64),
        "ra_E(ψ)",
    )
}

/// `j_{ψ,w}`: the exponent with `ψ|_{I_w} = θ_w^j`, for `ψ` of degree one on a tame place.
fn linear_exponent(psi: &Psi, d: &ramification::LocalDatum) -> Result<i64> {
    let mult = theta_multiplicities(psi, d)?;
    Ok(mult
        .iter()
        .position(|&x| x == 1)
        .expect("a linear character has one eigenvalue") as i64)
}

fn check_tame_linear(cover: &CoverData, bundle: &BundleData, psi: &Psi) -> Result<()> {
    check_group(cover, psi)?;
    if !cover.is_tame() {
        return Err(PsiError::HypothesisViolated(
            "cover is wildly ramified".into(),
        ));
    }
    if psi.degree() != 1 {
        return Err(PsiError::HypothesisViolated(format!(
            "deg ψ = {} is not 1",
            psi.degree()
        )));
    }
    check_pullback_twist(cover, bundle)
}

/// `(rk E/|G|) Σ_w Σ_{a=0}^{d_w-1} j^{(a)}_{ψ,w} [k_w:F_p]/d_w`, where `d_w` is
/// the order of `p` modulo `|I_w|` and `ψ|_{I_w} = θ_w^{j^{(a)} p^a}`.
pub fn ra_closed_tame(cover: &CoverData, bundle: &BundleData, psi: &Psi) -> Result<BigInt> {
    check_tame_linear(cover, bundle, psi)?;
    let p = cover.characteristic() as u64;
    let mut acc = BigRational::zero();
    for pl in cover.places() {
        let d = pl.datum();
        let e = d.inertia_order() as u64;
        let j0 = linear_exponent(psi, d)?;
        let dw = if e == 1 {
            1
        } else {
            multiplicative_order(p % e, e).expect("p is prime to |I_w|")
        };
        let f = d.residue_degree() as u64;
        let mut s = 0i64;
        for a in 0..dw {
            let pa = pow_mod(p, a, e.max(1)) as i64;
            let inv = inv_mod(pa, e.max(1) as i64).expect("p^a is a unit mod |I_w|");
            s += (j0 * inv).rem_euclid(e.max(1) as i64);
        }
        acc += pl.count() * rational(s) * rational(f as i64) / rational(dw as i64);
    }
    integral(
        acc * rational(bundle.rank as i64) / rational(cover.group().order() as i64),
        "ra_E(ψ)",
    )
}

/// `(rk E/|G|) Σ_w j_{ψ,w} [k_w:F_p]` when every `|I_w|` divides `p - 1`.
pub fn ra_closed_simple(cover: &CoverData, bundle: &BundleData, psi: &Psi) -> Result<BigInt> {
    check_tame_linear(cover, bundle, psi)?;
    let p = cover.characteristic() as usize;
    let mut acc = BigRational::zero();
    for pl in cover.places() {
        let d = pl.datum();
        if (p - 1) % d.inertia_order() != 0 {
            return Err(PsiError::HypothesisViolated(format!(
                "|I_w| = {} does not divide p - 1",
                d.inertia_order()
            )));
        }
        let j = linear_exponent(psi, d)?;
        acc += pl.count() * rational(j * d.residue_degree() as i64);
    }
    integral(
        acc * rational(bundle.rank as i64) / rational(cover.group().order() as i64),
        "ra_E(ψ)",
    )
}

/// `[k:F_p] deg ψ χ_k(E^G) + ra_E(ψ)`.
pub fn psi_euler_exponent(cover: &CoverData, bundle: &BundleData, psi: &Psi) -> Result<BigInt> {
    let base = BigInt::from(cover.base_degree() as i64 * psi.degree() * bundle.invariant_chi);
    Ok(base + ra(cover, bundle, psi)?)
}

/// `v_λ(ρ^ψ(χ^G_ℓ(E)))`, which is zero for `ℓ ≠ p`.
pub fn rho_psi_valuation(
    cover: &CoverData,
    bundle: &BundleData,
    psi: &Psi,
    lambda: &LambdaSpec,
) -> Result<BigInt> {
    if lambda.ell != cover.characteristic() {
        return Ok(BigInt::zero());
    }
    Ok(-psi_euler_exponent(cover, bundle, psi)? * BigInt::from(lambda.ramification))
}

/// `Σ_i (-1)^{i+1} length(H^i)` for a complex with torsion cohomology.
pub fn torsion_euler_valuation(lengths: &[(u32, u64)]) -> i64 {
    lengths
        .iter()
        .map(|&(i, len)| {
            if i % 2 == 0 {
                -(len as i64)
            } else {
                len as i64
            }
        })
        .sum()
}

/// `-e_{λ|ℓ} m`.
pub fn psi_torsion_valuation(m: i64, lambda: &LambdaSpec) -> i64 {
    -(lambda.ramification as i64) * m
}

/// `dim_{k̄} Hom_{k̄G}(T̄_ψ, k̄ ⊗_{F_p} P)` for a class `P` of `K0(kG)`, `k = F_{p^s}`,
/// from Brauer characters: `Σ_{a<s} (1/|G|) Σ_{g p-regular} β_P(g)^{(p^a)} conj ψ(g)`.
pub fn psi_multiplicity(class: &K0Class, psi: &Psi, base_degree: u32) -> Result<BigRational> {
    let g = class.function.group();
    if g != psi.group() {
        return Err(PsiError::InvalidPsi(
            "ψ is a character of another group".into(),
        ));
    }
    let p = class.function.characteristic() as i64;
    let rc = g.regular_classes(p as u32);
    let mut acc = CycNumber::zero(1);
    let mut frob = 1i64;
    for _ in 0..base_degree {
        for (k, &r) in rc.reps.iter().enumerate() {
            let beta = class.function.values()[k].galois(frob);
            acc = &acc + &(&beta * &psi.at(r).conj()).scale_int(rc.sizes[k] as i64);
        }
        frob *= p;
    }
    let total = acc.scale(&BigRational::new(1.into(), (g.order() as i64).into()));
    total
        .to_rational()
        .ok_or_else(|| PsiError::NotIntegral(format!("ψ-multiplicity {total} is irrational")))
}
