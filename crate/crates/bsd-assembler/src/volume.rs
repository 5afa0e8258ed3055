//! The volume, Lie-degree and `Z₂` factors, as exponents.

use exact_algebra::arith::split_prime_power;
use ramification::d_prime;
use serde::{Deserialize, Serialize};

use crate::error::{BsdError, Result};

/// Exponent of `|k|` in `vol_{Z₁}(A/K)`: `dim A·(1 − g_K − deg Z₁) + deg Lie 𝒜`.
pub fn vol_exponent(dim_a: i64, genus_k: i64, deg_z1: i64, deg_lie: i64) -> i64 {
    dim_a * (1 - genus_k - deg_z1) + deg_lie
}

/// `deg Lie 𝒜 = −deg Δ/12` for an elliptic curve with minimal discriminant `Δ`.
pub fn lie_degree_elliptic(deg_delta: i64) -> Result<i64> {
    if deg_delta % 12 != 0 {
        return Err(BsdError::DiscriminantNotDivisible(deg_delta));
    }
    Ok(-deg_delta / 12)
}

/// `log_p n`, or an error if `n` is not a power of `p`.
pub fn p_exponent(n: u64, p: u32) -> Result<i64> {
    if n == 0 {
        return Err(BsdError::NotPPower(n, p));
    }
    match split_prime_power(n, p as u64) {
        (k, 1) => Ok(k as i64),
        _ => Err(BsdError::NotPPower(n, p)),
    }
}

/// One place `v ∈ Z₂`: either `|Lie(𝒜_L)(k_ṽ)^{G_ṽ}|` or the data it is
/// derived from, `|k_v|^{d′}` with `d′` the number of `r_{w,i} = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Z2Entry {
    Order { order: u64 },
    Exponents { r: Vec<i64>, residue_order: u64 },
}

impl Z2Entry {
    /// `log_p |Lie(𝒜_L)(k_ṽ)^{G_ṽ}|`.
    pub fn p_exponent(&self, p: u32) -> Result<i64> {
        match self {
            Z2Entry::Order { order } => p_exponent(*order, p),
            Z2Entry::Exponents { r, residue_order } => {
                if r.iter().any(|&x| x < 0) {
                    return Err(BsdError::Negative("r_{w,i}"));
                }
                Ok(d_prime(r) as i64 * p_exponent(*residue_order, p)?)
            }
        }
    }
}

/// `Σ_{v∈Z₂} log_p |Lie(𝒜_L)(k_ṽ)^{G_ṽ}|`.
pub fn z2_correction(entries: &[Z2Entry], p: u32) -> Result<i64> {
    entries.iter().map(|e| e.p_exponent(p)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volume_examples() {
        assert_eq!(vol_exponent(1, 0, 3, -2), -4);
        assert_eq!(vol_exponent(0, 5, 7, 3), 3);
        assert_eq!(vol_exponent(2, 1, 0, 0), 0);
    }

    #[test]
    fn lie_degree_examples() {
        assert_eq!(lie_degree_elliptic(24).unwrap(), -2);
        assert_eq!(lie_degree_elliptic(12).unwrap(), -1);
        assert_eq!(
            lie_degree_elliptic(13),
            Err(BsdError::DiscriminantNotDivisible(13))
        );
    }

    #[test]
    fn z2_examples() {
        assert_eq!(z2_correction(&[], 5).unwrap(), 0);
        let one = Z2Entry::Exponents {
            r: vec![0],
            residue_order: 5,
        };
        assert_eq!(z2_correction(&[one], 5).unwrap(), 1);
        for q in [5, 25, 125] {
            assert_eq!(
                z2_correction(
                    &[Z2Entry::Exponents {
                        r: vec![1, 2],
                        residue_order: q
                    }],
                    5
                )
                .unwrap(),
                0
            );
        }
        let both = [
            Z2Entry::Exponents {
                r: vec![0, 0, 3],
                residue_order: 25,
            },
            Z2Entry::Order { order: 125 },
        ];
        assert_eq!(z2_correction(&both, 5).unwrap(), 7);
        assert_eq!(
            z2_correction(&[Z2Entry::Order { order: 10 }], 5),
            Err(BsdError::NotPPower(10, 5))
        );
        assert!(z2_correction(
            &[Z2Entry::Exponents {
                r: vec![0],
                residue_order: 7
            }],
            5
        )
        .is_err());
    }

    #[test]
    fn z2_entries_parse_in_both_forms() {
        let e: Vec<Z2Entry> =
            serde_json::from_str(r#"[{"order": 25}, {"r": [0, 1], "residue_order": 5}]"#).unwrap();
        assert_eq!(e[0], Z2Entry::Order { order: 25 });
        assert_eq!(z2_correction(&e, 5).unwrap(), 3);
    }
}
