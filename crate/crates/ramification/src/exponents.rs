//! Exponent arithmetic for stalks of equivariant bundles at ramified places.

use exact_algebra::arith::ceil_div;
use serde::{Deserialize, Serialize};

use crate::datum::LocalDatum;
use crate::error::{RamificationError, Result};

/// Exponents `n_{w,i}` of a rank-r stalk `⊕ m_w^{-n_{w,i}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleStalk {
    pub exponents: Vec<i64>,
}

impl BundleStalk {
    pub fn new(exponents: Vec<i64>) -> Self {
        BundleStalk { exponents }
    }
    /// Line bundle stalk with a single exponent.
    pub fn line(n: i64) -> Self {
        BundleStalk { exponents: vec![n] }
    }
    pub fn rank(&self) -> usize {
        self.exponents.len()
    }
}

/// All exponents satisfy `n ≡ -1 mod |P_w|`.
pub fn check_ew(stalk: &BundleStalk, dat: &LocalDatum) -> bool {
    let wp = dat.wild_order() as i64;
    stalk.exponents.iter().all(|&n| (n + 1).rem_euclid(wp) == 0)
}

/// `l ≡ (1 + n)/|P_w| - 1 mod |I_w/P_w|` with `0 <= l < |I_w/P_w|`.
pub fn l_exponent(n: i64, wild_order: usize, tame_order: usize) -> Result<i64> {
    let wp = wild_order as i64;
    if (n + 1).rem_euclid(wp) != 0 {
        return Err(RamificationError::EwViolation { n, wild_order });
    }
    Ok(((n + 1).div_euclid(wp) - 1).rem_euclid(tame_order as i64))
}

pub fn l_exponents(stalk: &BundleStalk, dat: &LocalDatum) -> Result<Vec<i64>> {
    stalk
        .exponents
        .iter()
        .map(|&n| l_exponent(n, dat.wild_order(), dat.tame_order()))
        .collect()
}

/// Exponents from Néron-model data: `r_{w,i}` with `0 <= r < |I_w|`, and
/// whether the place lies in `Z'_L`.
pub fn l_from_neron(r: &[i64], in_z_prime: &[bool], dat: &LocalDatum) -> Result<Vec<i64>> {
    if r.len() != in_z_prime.len() {
        return Err(RamificationError::LengthMismatch {
            expected: r.len(),
            got: in_z_prime.len(),
        });
    }
    let e = dat.tame_order() as i64;
    r.iter()
        .zip(in_z_prime)
        .map(|(&ri, &inside)| {
            if ri < 0 || ri >= dat.inertia_order() as i64 {
                return Err(RamificationError::NeronOutOfRange {
                    r: ri,
                    inertia_order: dat.inertia_order(),
                });
            }
            Ok(if inside && ri != 0 { ri - 1 } else { e - 1 })
        })
        .collect()
}

/// Number of indices with `r_{w,i} = 0`.
pub fn d_prime(r: &[i64]) -> usize {
    r.iter().filter(|&&x| x == 0).count()
}

/// `n_v = -1 + ⌈(n + 1)/e⌉` for a pullback stalk exponent `n` and `e = |I|`.
pub fn descent_exponent(n: i64, e: usize) -> i64 {
    -1 + ceil_div(n + 1, e as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l_examples() {
        assert_eq!(l_exponent(3, 1, 5).unwrap(), 3);
        for wp in [1usize, 2, 3, 5] {
            for e in [1usize, 2, 4] {
                assert_eq!(l_exponent(-1, wp, e).unwrap(), e as i64 - 1);
            }
        }
        assert_eq!(l_exponent(5, 3, 2).unwrap(), 1);
        assert_eq!(
            l_exponent(0, 3, 2).unwrap_err(),
            RamificationError::EwViolation {
                n: 0,
                wild_order: 3
            }
        );
    }

    #[test]
    fn descent_examples() {
        assert_eq!(descent_exponent(-1, 7), -1);
        for e in 1..6 {
            assert_eq!(descent_exponent(e as i64 - 1, e), 0);
        }
        assert_eq!(descent_exponent(0, 2), 0);
        assert_eq!(descent_exponent(-2, 2), -1);
        assert_eq!(descent_exponent(-3, 2), -2);
    }

    #[test]
    fn d_prime_counts() {
        assert_eq!(d_prime(&[0, 0, 3]), 2);
        assert_eq!(d_prime(&[]), 0);
        assert_eq!(d_prime(&[1, 2, 3]), 0);
    }
}
