//! Affine maps `x ↦ ax + b` of `P¹` over `F_q`.

use exact_algebra::{arith::is_prime, Fe, GaloisField, Poly, PolyRing};
use serde::{Deserialize, Serialize};

use crate::error::{OracleError, Result};

/// `x ↦ a·x + b` with `a ≠ 0`, by field element codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineMap {
    pub a: Fe,
    pub b: Fe,
}

impl AffineMap {
    pub const IDENTITY: AffineMap = AffineMap { a: 1, b: 0 };

    pub fn new(field: &GaloisField, a: Fe, b: Fe) -> Result<Self> {
        let q = field.order();
        if a == 0 || a >= q || b >= q {
            return Err(OracleError::InvalidMap(format!("({a}, {b}) over F_{q}")));
        }
        Ok(AffineMap { a, b })
    }

    pub fn validate(&self, field: &GaloisField) -> Result<()> {
        Self::new(field, self.a, self.b).map(|_| ())
    }

    /// `self ∘ o`: `(a₁, b₁)∘(a₂, b₂) = (a₁a₂, a₁b₂ + b₁)`.
    pub fn compose(&self, field: &GaloisField, o: &AffineMap) -> AffineMap {
        AffineMap {
            a: field.mul(self.a, o.a),
            b: field.add(field.mul(self.a, o.b), self.b),
        }
    }

    pub fn inverse(&self, field: &GaloisField) -> AffineMap {
        let ai = field.inv(self.a).expect("a ≠ 0");
        AffineMap {
            a: ai,
            b: field.neg(field.mul(ai, self.b)),
        }
    }

    pub fn apply(&self, field: &GaloisField, x: Fe) -> Fe {
        field.add(field.mul(self.a, x), self.b)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// `f(a·x + b)` for a polynomial `f`.
    pub fn substitute(&self, ring: &PolyRing, f: &Poly) -> Poly {
        let lin = Poly::new(vec![self.b, self.a]);
        let mut acc = Poly::zero();
        for &c in f.coeffs().iter().rev() {
            acc = ring.add(&ring.mul(&acc, &lin), &Poly::constant(c));
        }
        acc
    }

    /// `(a·x + b)^i` for `i` in `0..=n`, as coefficient vectors of length `n + 1`.
    pub fn powers(&self, field: &GaloisField, n: usize) -> Vec<Vec<Fe>> {
        let mut out = Vec::with_capacity(n + 1);
        let mut cur = vec![0; n + 1];
        cur[0] = 1;
        for _ in 0..=n {
            out.push(cur.clone());
            let mut next = vec![0; n + 1];
            for (j, &c) in cur.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                next[j] = field.add(next[j], field.mul(c, self.b));
                if j < n {
                    next[j + 1] = field.add(next[j + 1], field.mul(c, self.a));
                }
            }
            cur = next;
        }
        out
    }
}

/// The Conway-tower field with `q` elements.
pub fn field_of_order(q: u32) -> Result<GaloisField> {
    if q < 2 {
        return Err(OracleError::InvalidMap(format!(
            "no field with {q} elements"
        )));
    }
    let p = (2..=q).find(|d| q % d == 0).expect("q >= 2");
    let mut r = 0;
    let mut m = q;
    while m % p == 0 {
        m /= p;
        r += 1;
    }
    if m != 1 || !is_prime(p as u64) {
        return Err(OracleError::InvalidMap(format!("{q} is not a prime power")));
    }
    Ok(GaloisField::conway(p, r)?)
}
