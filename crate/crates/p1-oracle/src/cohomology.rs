//! Riemann–Roch spaces on `P¹` and the cohomology of `O(D)` as `kG`-modules.

use exact_algebra::{FqMatrix, GaloisField, Poly, PolyRing};
use group_rep::{ClassFunction, MatrixModule};

use crate::cover::P1Cover;
use crate::divisor::{GDivisor, P1ClosedPoint, PolyLabel};
use crate::error::{OracleError, Result};

/// `num / den` with polynomial numerator and denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: Poly,
    pub den: Poly,
}

impl RationalFunction {
    pub fn valuation(&self, ring: &PolyRing, w: &P1ClosedPoint) -> Result<i64> {
        match w {
            P1ClosedPoint::Infinity => {
                Ok(self.den.degree().unwrap_or(0) as i64 - self.num.degree().unwrap_or(0) as i64)
            }
            P1ClosedPoint::Finite(f) => {
                Ok(multiplicity(ring, &self.num, f)? - multiplicity(ring, &self.den, f)?)
            }
        }
    }
}

impl std::fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) / ({})", PolyLabel(&self.num), PolyLabel(&self.den))
    }
}

fn multiplicity(ring: &PolyRing, g: &Poly, f: &Poly) -> Result<i64> {
    let mut k = 0;
    let mut g = g.clone();
    loop {
        let (q, r) = ring.div_rem(&g, f)?;
        if !r.is_zero() || g.is_zero() {
            return Ok(k);
        }
        g = q;
        k += 1;
    }
}

/// A basis of `L(D) = {f : div f + D >= 0}`: `x^i h⁻/h⁺` for `0 <= i <= deg D`,
/// checked by valuations at every point of the support and at `∞`.
pub fn rr_space(field: &GaloisField, d: &GDivisor) -> Result<Vec<RationalFunction>> {
    let ring = PolyRing::new(field);
    let n = d.degree();
    if n < 0 {
        return Ok(Vec::new());
    }
    let (plus, minus) = d.finite_parts(&ring);
    let basis: Vec<RationalFunction> = (0..=n as usize)
        .map(|i| RationalFunction {
            num: ring.mul(&Poly::monomial(1, i), &minus),
            den: plus.clone(),
        })
        .collect();
    let mut points: Vec<(&P1ClosedPoint, i64)> = d.support().collect();
    if d.at_infinity() == 0 {
        points.push((&P1ClosedPoint::Infinity, 0));
    }
    for f in &basis {
        for &(w, m) in &points {
            if f.valuation(&ring, w)? < -m {
                return Err(OracleError::Inconsistent(format!(
                    "{f} has a pole of order beyond {m} at {w}"
                )));
            }
        }
    }
    Ok(basis)
}

/// Matrices of `(σf)(x) = f(σ⁻¹x)` on the basis of [`rr_space`], one per
/// element of `G`.
fn function_action(cover: &P1Cover, d: &GDivisor) -> Result<Vec<FqMatrix>> {
    let field = cover.field();
    let ring = PolyRing::new(field);
    d.check_stable(field, cover.maps())?;
    let n = d.degree();
    let dim = (n + 1).max(0) as usize;
    let (plus, minus) = d.finite_parts(&ring);
    cover
        .maps()
        .iter()
        .map(|sigma| {
            let s = sigma.inverse(field);
            // h(σ⁻¹x) = c·h(x) for G-stable h
            let factor = |h: &Poly| -> Result<exact_algebra::Fe> {
                let moved = s.substitute(&ring, h);
                let c = moved.leading();
                if moved != ring.scale(h, c) {
                    return Err(OracleError::Inconsistent(format!(
                        "{} is not stable",
                        PolyLabel(h)
                    )));
                }
                Ok(c)
            };
            let scale = field.div(factor(&minus)?, factor(&plus)?)?;
            let mut m = FqMatrix::zeros(field, dim, dim);
            if dim > 0 {
                for (i, col) in s.powers(field, dim - 1).iter().enumerate() {
                    for (j, &c) in col.iter().enumerate() {
                        m.set(j, i, field.mul(scale, c));
                    }
                }
            }
            Ok(m)
        })
        .collect()
}

/// `H^i(P¹, O(D))` with its `G`-action.
#[derive(Debug, Clone)]
pub struct CohomologyModule {
    pub degree: u8,
    pub module: MatrixModule,
}

impl CohomologyModule {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn generator_matrices(&self) -> &[FqMatrix] {
        self.module.generator_matrices()
    }

    pub fn brauer_character(&self) -> Result<ClassFunction> {
        Ok(self.module.brauer_character()?)
    }
}

/// `H⁰ = L(D)` with `(σf)(x) = f(σ⁻¹x)`.
pub fn h0_with_action(cover: &P1Cover, d: &GDivisor) -> Result<CohomologyModule> {
    let mats = function_action(cover, d)?;
    let module = MatrixModule::from_element_fn(cover.group(), cover.field(), |g| mats[g].clone())?;
    Ok(CohomologyModule { degree: 0, module })
}

/// `H¹ = H⁰(Ω(-D))^∨`: differentials `f dx` with `f ∈ L(K - D)`, `K = -2∞`,
/// acted on by `σ(f dx) = (f∘σ⁻¹) d(σ⁻¹x)`, then the contragredient.
pub fn h1_with_action(cover: &P1Cover, d: &GDivisor) -> Result<CohomologyModule> {
    let field = cover.field();
    let dual_divisor = d
        .neg()
        .add(&GDivisor::from_entries([(P1ClosedPoint::Infinity, -2)]));
    let mats = function_action(cover, &dual_divisor)?;
    let mats: Vec<FqMatrix> = mats
        .iter()
        .zip(cover.maps())
        .map(|(m, sigma)| m.scale(sigma.inverse(field).a))
        .collect();
    let omega = MatrixModule::from_element_fn(cover.group(), field, |g| mats[g].clone())?;
    Ok(CohomologyModule {
        degree: 1,
        module: omega.dual(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::AffineMap;
    use crate::cover::build_cover;

    fn f5() -> GaloisField {
        GaloisField::prime(5).unwrap()
    }

    #[test]
    fn small_spaces() {
        let f = f5();
        assert_eq!(rr_space(&f, &GDivisor::zero()).unwrap().len(), 1);
        let two_inf = GDivisor::from_entries([(P1ClosedPoint::Infinity, 2)]);
        let basis = rr_space(&f, &two_inf).unwrap();
        assert_eq!(
            basis.iter().map(|b| b.num.clone()).collect::<Vec<_>>(),
            (0..3).map(|i| Poly::monomial(1, i)).collect::<Vec<_>>()
        );
        // D = (0) + (∞): {1/x, 1, x}
        let d = GDivisor::from_entries([
            (P1ClosedPoint::Infinity, 1),
            (P1ClosedPoint::rational(&f, 0), 1),
        ]);
        let basis = rr_space(&f, &d).unwrap();
        assert_eq!(basis.len(), 3);
        assert!(basis.iter().all(|b| b.den == Poly::x()));
        assert!(
            rr_space(&f, &GDivisor::from_entries([(P1ClosedPoint::Infinity, -1)]))
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn sign_action_on_two_zero_plus_two_infinity() {
        let c = build_cover(5, &[AffineMap { a: 4, b: 0 }]).unwrap();
        let f = c.field().clone();
        let d = GDivisor::from_entries([
            (P1ClosedPoint::Infinity, 2),
            (P1ClosedPoint::rational(&f, 0), 2),
        ]);
        let h0 = h0_with_action(&c, &d).unwrap();
        assert_eq!(h0.dim(), 5);
        // basis x^{i-2}: x ↦ -x acts by (-1)^i
        let m = &h0.generator_matrices()[0];
        for i in 0..5 {
            for j in 0..5 {
                let expected = if i != j {
                    0
                } else if i % 2 == 0 {
                    1
                } else {
                    4
                };
                assert_eq!(m.get(i, j), expected);
            }
        }
        assert_eq!(h1_with_action(&c, &d).unwrap().dim(), 0);
    }

    #[test]
    fn riemann_roch_dimensions() {
        let c = build_cover(2, &[AffineMap { a: 1, b: 1 }]).unwrap();
        for n in -5..5 {
            let d = GDivisor::from_entries([(P1ClosedPoint::Infinity, n)]);
            let h0 = h0_with_action(&c, &d).unwrap();
            let h1 = h1_with_action(&c, &d).unwrap();
            assert_eq!(h0.dim() as i64 - h1.dim() as i64, n + 1);
        }
        let d = GDivisor::from_entries([(P1ClosedPoint::Infinity, -1)]);
        assert_eq!(
            (
                h0_with_action(&c, &d).unwrap().dim(),
                h1_with_action(&c, &d).unwrap().dim()
            ),
            (0, 0)
        );
    }

    #[test]
    fn constants_are_trivial() {
        let c = build_cover(7, &[AffineMap { a: 1, b: 1 }, AffineMap { a: 2, b: 0 }]).unwrap();
        let h0 = h0_with_action(&c, &GDivisor::zero()).unwrap();
        assert_eq!(h0.dim(), 1);
        assert!(h0.generator_matrices().iter().all(|m| m.is_identity()));
    }
}
