//! Local expansions of affine maps at their fixed points: the cotangent
//! character, the lower ramification filtration and the lattice quotients
//! `m_w^{-n} / π_v m_w^{-n}`.

use exact_algebra::{Fe, FqMatrix, GaloisField};
use group_rep::MatrixModule;

use crate::affine::AffineMap;
use crate::cover::P1Cover;
use crate::divisor::P1ClosedPoint;
use crate::error::{OracleError, Result};

/// Precision cap for [`lower_index`].
pub const MAX_PRECISION: usize = 1 << 12;

fn ps_mul(field: &GaloisField, a: &[Fe], b: &[Fe], prec: usize) -> Vec<Fe> {
    let mut out = vec![0; prec];
    for (i, &x) in a.iter().enumerate().take(prec).filter(|(_, &x)| x != 0) {
        for (j, &y) in b.iter().enumerate().take(prec - i) {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    out
}

fn ps_inv(field: &GaloisField, a: &[Fe], prec: usize) -> Vec<Fe> {
    let c = field.inv(a[0]).expect("unit series");
    let mut out = vec![0; prec];
    out[0] = c;
    for k in 1..prec {
        let mut acc = 0;
        for i in 1..=k.min(a.len() - 1) {
            acc = field.add(acc, field.mul(a[i], out[k - i]));
        }
        out[k] = field.neg(field.mul(c, acc));
    }
    out
}

fn ps_pow(field: &GaloisField, a: &[Fe], k: i64, prec: usize) -> Vec<Fe> {
    let base = if k < 0 {
        ps_inv(field, a, prec)
    } else {
        a[..prec.min(a.len())].to_vec()
    };
    let mut out = vec![0; prec];
    out[0] = 1;
    let mut sq = base;
    let mut e = k.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            out = ps_mul(field, &out, &sq, prec);
        }
        sq = ps_mul(field, &sq, &sq, prec);
        e >>= 1;
    }
    out
}

/// `σ(t)/t` to `prec` terms, for `σ` fixing `w`, with `t = 1/x` at `∞` and
/// `t = x - α` at `α`. Here `σ(t) = t ∘ σ⁻¹`.
pub fn uniformizer_ratio(
    field: &GaloisField,
    w: &P1ClosedPoint,
    sigma: &AffineMap,
    prec: usize,
) -> Result<Vec<Fe>> {
    let inv = sigma.inverse(field);
    let prec = prec.max(1);
    match w {
        // t ∘ σ⁻¹ = 1/(a'x + b') = t/(a' + b't)
        P1ClosedPoint::Infinity => {
            let mut den = vec![inv.a, inv.b];
            den.resize(prec.max(2), 0);
            Ok(ps_inv(field, &den, prec))
        }
        _ => {
            let alpha = w
                .rational_root(field)
                .ok_or_else(|| OracleError::NotRamified(w.to_string()))?;
            // (a'x + b') - α = a't + (a'α + b' - α)
            if inv.apply(field, alpha) != alpha {
                return Err(OracleError::NotRamified(format!(
                    "{w} is not fixed by ({}, {})",
                    sigma.a, sigma.b
                )));
            }
            let mut out = vec![0; prec];
            out[0] = inv.a;
            Ok(out)
        }
    }
}

/// The action of `σ` on the cotangent line `m_w / m_w²`.
pub fn cotangent_character(
    field: &GaloisField,
    w: &P1ClosedPoint,
    sigma: &AffineMap,
) -> Result<Fe> {
    Ok(uniformizer_ratio(field, w, sigma, 1)?[0])
}

/// `i(σ) = v_t(σ(t) - t)`, or `None` for the identity. The precision is
/// doubled until the valuation is visible.
pub fn lower_index(
    field: &GaloisField,
    w: &P1ClosedPoint,
    sigma: &AffineMap,
) -> Result<Option<usize>> {
    if sigma.is_identity() {
        return Ok(None);
    }
    let mut prec = 4;
    while prec <= MAX_PRECISION {
        let mut u = uniformizer_ratio(field, w, sigma, prec)?;
        u[0] = field.sub(u[0], 1);
        if let Some(k) = u.iter().position(|&c| c != 0) {
            return Ok(Some(k + 1));
        }
        prec *= 2;
    }
    Err(OracleError::Precision(MAX_PRECISION))
}

/// `|I_{w,s}|` for `s = 0, 1, …` down to the first trivial group.
pub fn lower_filtration(
    field: &GaloisField,
    w: &P1ClosedPoint,
    inertia: &[AffineMap],
) -> Result<Vec<usize>> {
    let mut idx = Vec::with_capacity(inertia.len());
    for s in inertia {
        if let Some(i) = lower_index(field, w, s)? {
            idx.push(i);
        }
    }
    let mut out = Vec::new();
    for s in 0.. {
        let size = 1 + idx.iter().filter(|&&i| i > s).count();
        out.push(size);
        if size == 1 {
            break;
        }
    }
    Ok(out)
}

/// The `k[I_w]`-module `m_w^{-n} / π_v m_w^{-n} = t^{-n}O_w / t^{-n+e}O_w`
/// on the basis `t^{-n}, …, t^{-n+e-1}`, over the stabilizer of `w` as a
/// standalone group. Residue fields of ramified points are `F_q`, so the
/// action is linear.
pub fn lattice_quotient(cover: &P1Cover, w: &P1ClosedPoint, n: i64) -> Result<MatrixModule> {
    let orbit = cover
        .ramified_orbit_of(w)
        .ok_or_else(|| OracleError::NotRamified(w.to_string()))?;
    let inertia = orbit.inertia_subgroup(cover)?;
    let field = cover.field();
    let e = inertia.order();
    let prec = 2 * e;
    let mut mats = Vec::with_capacity(e);
    for local in 0..e {
        let sigma = cover.map(inertia.to_parent(local));
        let u = uniformizer_ratio(field, w, &sigma, prec)?;
        let mut m = FqMatrix::zeros(field, e, e);
        for i in 0..e {
            // σ(t^k) = t^k u^k with k = -n + i
            let uk = ps_pow(field, &u, i as i64 - n, prec);
            for j in i..e {
                m.set(j, i, uk[j - i]);
            }
        }
        mats.push(m);
    }
    Ok(MatrixModule::from_element_fn(
        inertia.group(),
        field,
        |g| mats[g].clone(),
    )?)
}

/// Whether `m_w^{-n} / π_v m_w^{-n}` is projective over `k[I_w]`, by Higman's
/// criterion.
pub fn local_freeness_check(cover: &P1Cover, w: &P1ClosedPoint, n: i64) -> Result<bool> {
    Ok(lattice_quotient(cover, w, n)?.is_projective())
}
