//! Lifting roots of unity from finite fields to cyclotomic fields.
//!
//! For `x` in `F_{p^n}` with discrete logarithm `t` relative to the tower
//! generator, `lift(x) = zeta_m^(t*m/(p^n-1))`. The map is multiplicative,
//! commutes with `x -> x^p` and does not depend on which tower field holds `x`.

use crate::arith::gcd;
use crate::cyclotomic::CycNumber;
use crate::error::{AlgebraError, Result};
use crate::field::{Fe, GaloisField};

/// Exponent `k` with `lift(x) = zeta_m^k`, `0 <= k < m`.
pub fn lift_exponent(field: &GaloisField, x: Fe, m: u64) -> Result<u64> {
    let p = field.characteristic() as u64;
    if m == 0 || m % p == 0 {
        return Err(AlgebraError::CharacteristicDividesConductor {
            p: p as u32,
            conductor: m,
        });
    }
    let t = field.log(x)?;
    let q1 = field.order() as u64 - 1;
    let order = q1 / gcd(t, q1);
    if m % order != 0 {
        return Err(AlgebraError::OrderDoesNotDivide {
            order,
            conductor: m,
        });
    }
    Ok(((t as u128 * m as u128 / q1 as u128) % m as u128) as u64)
}

pub fn root_of_unity_lift(field: &GaloisField, x: Fe, m: u64) -> Result<CycNumber> {
    Ok(CycNumber::zeta_power(m, lift_exponent(field, x, m)? as i64))
}

/// The element of `field` whose lift is `zeta_m^k`; requires `m | |field^x|`.
pub fn reduce_root_of_unity(field: &GaloisField, m: u64, k: i64) -> Result<Fe> {
    let q1 = field.order() as u64 - 1;
    if q1 % m != 0 {
        return Err(AlgebraError::OrderDoesNotDivide {
            order: m,
            conductor: q1,
        });
    }
    Ok(field.exp(k.rem_euclid(m as i64) * (q1 / m) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f5_examples() {
        let f5 = GaloisField::prime(5).unwrap();
        assert_eq!(root_of_unity_lift(&f5, 1, 4).unwrap(), CycNumber::one(4));
        assert_eq!(
            root_of_unity_lift(&f5, 2, 4).unwrap(),
            CycNumber::zeta_power(4, 1)
        );
        assert_eq!(
            root_of_unity_lift(&f5, 4, 4).unwrap(),
            CycNumber::from_int(4, -1)
        );
    }

    #[test]
    fn errors() {
        let f5 = GaloisField::prime(5).unwrap();
        assert_eq!(
            root_of_unity_lift(&f5, 0, 4).unwrap_err(),
            AlgebraError::ZeroElement
        );
        assert!(matches!(
            root_of_unity_lift(&f5, 2, 2).unwrap_err(),
            AlgebraError::OrderDoesNotDivide {
                order: 4,
                conductor: 2
            }
        ));
        assert!(matches!(
            root_of_unity_lift(&f5, 2, 20).unwrap_err(),
            AlgebraError::CharacteristicDividesConductor { .. }
        ));
    }

    #[test]
    fn reduction_inverts_lift() {
        let f = GaloisField::conway(3, 2).unwrap();
        for k in 0..8 {
            let x = reduce_root_of_unity(&f, 8, k).unwrap();
            assert_eq!(lift_exponent(&f, x, 8).unwrap(), k as u64);
        }
    }
}
