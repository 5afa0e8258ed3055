//! Eigenspaces of `C_w` on `T̄_ψ` and the multiplicities `m_{ψ,w}(j)`.

use exact_algebra::{lift_exponent, BigRational, CycNumber};
use num_traits::ToPrimitive;
use ramification::LocalDatum;

use crate::error::{PsiError, Result};
use crate::psi::Psi;

/// `dim T̄_ψ[θ^s] = (1/|C_w|) Σ_{c ∈ C_w} ψ(c) lift(θ(c))^{-s}` for `s` in `0..|C_w|`.
pub fn theta_multiplicities(psi: &Psi, dat: &LocalDatum) -> Result<Vec<u64>> {
    if psi.group() != dat.group() {
        return Err(PsiError::InvalidPsi(
            "ψ and the local datum live on different groups".into(),
        ));
    }
    let e = dat.tame_order() as u64;
    let tame = dat.tame().elements();
    let logs = tame
        .iter()
        .map(|&c| {
            Ok(lift_exponent(dat.residue_field(), dat.theta(c).expect("C_w ⊂ I_w"), e)? as i64)
        })
        .collect::<Result<Vec<i64>>>()?;
    let inv_e = BigRational::new(1.into(), (e as i64).into());
    (0..e as usize)
        .map(|s| {
            let mut acc = CycNumber::zero(1);
            for (&c, &k) in tame.iter().zip(&logs) {
                acc = &acc + &(psi.at(c) * &CycNumber::zeta_power(e, -k * s as i64));
            }
            let dim = acc.scale(&inv_e);
            dim.to_integer().and_then(|d| d.to_u64()).ok_or_else(|| {
                PsiError::NonIntegralMultiplicity {
                    s,
                    value: dim.to_string(),
                }
            })
        })
        .collect()
}

/// `m_{ψ,w}(j) = Σ_{a=0}^{[k_w:F_p]-1} dim T̄_ψ[θ^{j p^a}]`.
pub fn m_psi_w(psi: &Psi, dat: &LocalDatum, j: i64) -> Result<u64> {
    let mult = theta_multiplicities(psi, dat)?;
    Ok(m_from_multiplicities(&mult, dat, j))
}

pub(crate) fn m_from_multiplicities(mult: &[u64], dat: &LocalDatum, j: i64) -> u64 {
    let e = mult.len() as i64;
    let p = dat.characteristic() as i64;
    let mut jj = j.rem_euclid(e);
    let mut acc = 0;
    for _ in 0..dat.residue_degree() {
        acc += mult[jj as usize];
        jj = (jj * p).rem_euclid(e);
    }
    acc
}
