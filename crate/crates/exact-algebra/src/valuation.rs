//! Valuations of rational and cyclotomic numbers at a prime above `ell`.
//!
//! The prime `lambda` of `Z[zeta_m]` is the kernel of `zeta_m -> omega` where
//! `omega` is the image of `zeta_m` under the root-of-unity reduction of the
//! tower field `F_{ell^N}`, `N = ord_m(ell)`. This is the prime at which
//! [`crate::lift`] is a section of reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{is_prime, multiplicative_order};
use crate::cyclotomic::{cyclotomic_polynomial, CycNumber};
use crate::error::{AlgebraError, Result};
use crate::field::GaloisField;
use crate::lift::reduce_root_of_unity;
use crate::poly::{Poly, PolyRing};

/// `ell`-adic valuation of a nonzero integer.
pub fn valuation_int(n: &BigInt, ell: u64) -> Result<i64> {
    if n.is_zero() {
        return Err(AlgebraError::ZeroElement);
    }
    let ell = BigInt::from(ell);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&ell);
        if !r.is_zero() {
            return Ok(v);
        }
        n = q;
        v += 1;
    }
}

/// `ell`-adic valuation of a nonzero rational.
pub fn valuation_rational(x: &BigRational, ell: u64) -> Result<i64> {
    if !is_prime(ell) {
        return Err(AlgebraError::NotPrime(ell));
    }
    Ok(valuation_int(x.numer(), ell)? - valuation_int(x.denom(), ell)?)
}

/// Valuation at `lambda` of a nonzero element of `Q(zeta_m)`, normalized so
/// that `v_lambda(ell) = 1`. Requires `ell` not dividing the conductor unless
/// the element is rational.
pub fn valuation_cyclotomic(x: &CycNumber, ell: u64) -> Result<i64> {
    if !is_prime(ell) {
        return Err(AlgebraError::NotPrime(ell));
    }
    if x.is_zero() {
        return Err(AlgebraError::ZeroElement);
    }
    if let Some(r) = x.to_rational() {
        return valuation_rational(&r, ell);
    }
    let m = x.conductor();
    if m % ell == 0 {
        return Err(AlgebraError::UnsupportedValuation(format!(
            "{ell} divides the conductor {m} of a non-rational element"
        )));
    }
    let n = multiplicative_order(ell, m).expect("ell is coprime to m") as u32;
    let field = GaloisField::conway(ell as u32, n)?;
    let omega = reduce_root_of_unity(&field, m, 1)?;
    let prime = GaloisField::prime(ell as u32)?;

    // minimal polynomial of omega over F_ell, then the complementary factor of Phi_m
    let big_ring = PolyRing::new(&field);
    let mut g = Poly::one();
    let mut w = omega;
    for _ in 0..n {
        g = big_ring.mul(&g, &Poly::new(vec![field.neg(w), 1]));
        w = field.frobenius(w);
    }
    let g_small = Poly::new(
        g.coeffs()
            .iter()
            .map(|&c| {
                prime
                    .restrict_from(&field, c)
                    .ok()
                    .flatten()
                    .expect("minimal polynomial over the prime field")
            })
            .collect(),
    );
    let ring = PolyRing::new(&prime);
    let phi = Poly::new(
        cyclotomic_polynomial(m)
            .iter()
            .map(|&c| prime.from_i64(c))
            .collect(),
    );
    let (h, r) = ring.div_rem(&phi, &g_small)?;
    debug_assert!(r.is_zero());
    let mut tau = CycNumber::zero(m);
    for (i, &c) in h.coeffs().iter().enumerate() {
        if c != 0 {
            tau = &tau + &CycNumber::zeta_power(m, i as i64).scale_int(c as i64);
        }
    }

    let residue = |coords: &[BigInt]| -> u32 {
        let ellb = BigInt::from(ell);
        let mut acc = 0;
        for (i, c) in coords.iter().enumerate() {
            let c = c.mod_floor(&ellb).to_u32().unwrap();
            if c != 0 {
                acc = field.add(acc, field.mul(c, field.pow(omega, i as i64)));
            }
        }
        acc
    };

    let den_val = valuation_int(x.denominator(), ell)?;
    let mut integral = CycNumber::from_coordinates(m, x.numerators().to_vec(), BigInt::one())?;
    let ellr = BigRational::new(BigInt::one(), BigInt::from(ell));
    let mut v = 0;
    while residue(integral.numerators()) == 0 {
        // integral * tau lies in every prime above ell, hence in ell Z[zeta]
        integral = (&integral * &tau).scale(&ellr);
        v += 1;
    }
    Ok(v - den_val)
}
