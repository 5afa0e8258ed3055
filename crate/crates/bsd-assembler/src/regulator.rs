//! `χ^BSD` from the `ψ`-twisted regulator and the `Sha` length.

use exact_algebra::arith::lcm;
use exact_algebra::cycmatrix::determinant;
use exact_algebra::valuation::valuation_cyclotomic;
use exact_algebra::CycNumber;
use psi_part::LambdaSpec;

use crate::error::{BsdError, Result};

/// `v_λ` of a non-zero element of `Q(ζ_m)`, for the prime over `ℓ` fixed by
/// the root-of-unity reduction, scaled by `e_{λ|ℓ}`.
pub fn lambda_valuation(x: &CycNumber, lambda: &LambdaSpec) -> Result<i64> {
    Ok(valuation_cyclotomic(x, lambda.ell as u64)? * lambda.ramification as i64)
}

/// `det` of the Gram matrix, which must be `r_alg × r_alg`.
pub fn gram_determinant(gram: &[Vec<CycNumber>], r_alg: usize) -> Result<CycNumber> {
    if gram.len() != r_alg || gram.iter().any(|row| row.len() != r_alg) {
        let cols = gram
            .iter()
            .map(Vec::len)
            .find(|&c| c != r_alg)
            .unwrap_or(r_alg);
        return Err(BsdError::GramShape {
            rows: gram.len(),
            cols,
            expected: r_alg,
        });
    }
    let m = gram
        .iter()
        .flatten()
        .fold(1, |acc, x| lcm(acc, x.conductor()));
    let det = determinant(gram, m)?;
    if det.is_zero() {
        return Err(BsdError::SingularGram);
    }
    Ok(det)
}

/// `v_λ(Reg^ψ_λ)`.
pub fn regulator_valuation(
    gram: &[Vec<CycNumber>],
    r_alg: usize,
    lambda: &LambdaSpec,
) -> Result<i64> {
    lambda_valuation(&gram_determinant(gram, r_alg)?, lambda)
}

/// `v_λ(Reg^ψ_λ/|G|^{r_alg}) + length(Sha^∨_{ψ,λ})`.
pub fn chi_bsd(
    gram: &[Vec<CycNumber>],
    r_alg: usize,
    group_order: u64,
    sha_length: i64,
    lambda: &LambdaSpec,
) -> Result<i64> {
    if sha_length < 0 {
        return Err(BsdError::Negative("sha_length"));
    }
    Ok(
        regulator_valuation(gram, r_alg, lambda)? - r_alg as i64 * lambda.valuation(group_order)
            + sha_length,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> CycNumber {
        CycNumber::from_int(1, v)
    }

    #[test]
    fn empty_gram() {
        let l = LambdaSpec::new(5, 1).unwrap();
        assert_eq!(chi_bsd(&[], 0, 10, 0, &l).unwrap(), 0);
        assert_eq!(chi_bsd(&[], 0, 10, 3, &l).unwrap(), 3);
    }

    #[test]
    fn one_by_one() {
        let l = LambdaSpec::new(5, 1).unwrap();
        // |G|·q with v_λ(q) = 0
        assert_eq!(chi_bsd(&[vec![int(10 * 7)]], 1, 10, 2, &l).unwrap(), 2);
        let l2 = LambdaSpec::new(5, 2).unwrap();
        assert_eq!(chi_bsd(&[vec![int(125)]], 1, 5, 0, &l2).unwrap(), 4);
    }

    #[test]
    fn errors() {
        let l = LambdaSpec::new(3, 1).unwrap();
        let singular = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(chi_bsd(&singular, 2, 1, 0, &l), Err(BsdError::SingularGram));
        assert!(matches!(
            chi_bsd(&singular, 1, 1, 0, &l),
            Err(BsdError::GramShape { .. })
        ));
        assert!(matches!(
            chi_bsd(&[], 0, 1, -1, &l),
            Err(BsdError::Negative(_))
        ));
    }

    #[test]
    fn cyclotomic_entries() {
        // 2 + ζ_3 has norm 3, a unit at 7
        let z = CycNumber::zeta_power(3, 1);
        let unit = &int(2) + &z;
        let l7 = LambdaSpec::new(7, 1).unwrap();
        assert_eq!(lambda_valuation(&unit, &l7).unwrap(), 0);
        // 3 + ζ_3 has norm 7: one of the two primes over 7 divides it
        let x = &int(3) + &z;
        let v = lambda_valuation(&x, &l7).unwrap();
        let v_conj = lambda_valuation(&x.conj(), &l7).unwrap();
        assert_eq!(v + v_conj, 1);
        let gram = vec![vec![x.clone(), int(0)], vec![int(0), int(7)]];
        assert_eq!(regulator_valuation(&gram, 2, &l7).unwrap(), v + 1);
    }
}
