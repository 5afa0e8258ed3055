//! Closed points of `P¹_{F_q}` and divisors supported on them.

use std::collections::BTreeMap;
use std::fmt;

use exact_algebra::{Fe, GaloisField, Poly, PolyRing};
use serde::{Deserialize, Serialize};

use crate::affine::AffineMap;
use crate::error::{OracleError, Result};

/// `∞` or the zero set of a monic irreducible polynomial over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum P1ClosedPoint {
    Infinity,
    Finite(Poly),
}

impl P1ClosedPoint {
    /// The rational point `x = α`.
    pub fn rational(field: &GaloisField, alpha: Fe) -> Self {
        P1ClosedPoint::Finite(Poly::new(vec![field.neg(alpha), 1]))
    }

    pub fn finite(field: &GaloisField, f: Poly) -> Result<Self> {
        let ring = PolyRing::new(field);
        if f.coeffs().iter().any(|&c| c >= field.order()) {
            return Err(OracleError::InvalidPoint(format!(
                "coefficient outside F_{}",
                field.order()
            )));
        }
        match f.degree() {
            Some(d) if d >= 1 && f.leading() == 1 => {}
            _ => {
                return Err(OracleError::InvalidPoint(format!(
                    "{} is not monic of positive degree",
                    PolyLabel(&f)
                )))
            }
        }
        if !ring.is_irreducible(&f) {
            return Err(OracleError::InvalidPoint(format!(
                "{} is reducible",
                PolyLabel(&f)
            )));
        }
        Ok(P1ClosedPoint::Finite(f))
    }

    /// Residue degree over `F_q`.
    pub fn degree(&self) -> usize {
        match self {
            P1ClosedPoint::Infinity => 1,
            P1ClosedPoint::Finite(f) => f.degree().expect("non-constant"),
        }
    }

    pub fn rational_root(&self, field: &GaloisField) -> Option<Fe> {
        match self {
            P1ClosedPoint::Finite(f) if f.degree() == Some(1) => Some(field.neg(f.coeff(0))),
            _ => None,
        }
    }

    /// `σ(w)`: its roots are the images of the roots of `w`, so it is cut out
    /// by `f(σ⁻¹x)` made monic.
    pub fn image(&self, field: &GaloisField, sigma: &AffineMap) -> Self {
        match self {
            P1ClosedPoint::Infinity => P1ClosedPoint::Infinity,
            P1ClosedPoint::Finite(f) => {
                let ring = PolyRing::new(field);
                P1ClosedPoint::Finite(ring.monic(&sigma.inverse(field).substitute(&ring, f)))
            }
        }
    }
}

impl fmt::Display for P1ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1ClosedPoint::Infinity => write!(f, "∞"),
            P1ClosedPoint::Finite(p) => write!(f, "({})", PolyLabel(p)),
        }
    }
}

/// Prints a polynomial by its coefficient codes, highest degree first.
pub struct PolyLabel<'a>(pub &'a Poly);

impl fmt::Display for PolyLabel<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// JSON form of a closed point with its coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSpec {
    /// Monic irreducible polynomial, constant term first.
    pub poly: Vec<Fe>,
    pub mult: i64,
}

/// JSON form of a divisor: the coefficient at `∞` and finite closed points.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DivisorSpec {
    pub infinity: i64,
    #[serde(default)]
    pub points: Vec<PointSpec>,
}

/// `D = Σ n_w w` on `P¹_{F_q}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GDivisor {
    coefficients: BTreeMap<P1ClosedPoint, i64>,
}

impl GDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (P1ClosedPoint, i64)>) -> Self {
        let mut d = Self::zero();
        for (w, n) in entries {
            d.add_at(w, n);
        }
        d
    }

    pub fn add_at(&mut self, w: P1ClosedPoint, n: i64) {
        let c = self.coefficients.entry(w.clone()).or_insert(0);
        *c += n;
        if *c == 0 {
            self.coefficients.remove(&w);
        }
    }

    pub fn coefficient(&self, w: &P1ClosedPoint) -> i64 {
        self.coefficients.get(w).copied().unwrap_or(0)
    }

    pub fn at_infinity(&self) -> i64 {
        self.coefficient(&P1ClosedPoint::Infinity)
    }

    pub fn support(&self) -> impl Iterator<Item = (&P1ClosedPoint, i64)> {
        self.coefficients.iter().map(|(w, &n)| (w, n))
    }

    pub fn degree(&self) -> i64 {
        self.support().map(|(w, n)| n * w.degree() as i64).sum()
    }

    pub fn neg(&self) -> Self {
        Self::from_entries(self.support().map(|(w, n)| (w.clone(), -n)))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_entries(
            self.support()
                .chain(o.support())
                .map(|(w, n)| (w.clone(), n)),
        )
    }

    /// `(h⁺, h⁻)` with `h^± = Π_{±n_w > 0} f_w^{|n_w|}` over finite points.
    pub fn finite_parts(&self, ring: &PolyRing) -> (Poly, Poly) {
        let mut plus = Poly::one();
        let mut minus = Poly::one();
        for (w, n) in self.support() {
            if let P1ClosedPoint::Finite(f) = w {
                let part = ring.pow(f, n.unsigned_abs());
                if n > 0 {
                    plus = ring.mul(&plus, &part);
                } else {
                    minus = ring.mul(&minus, &part);
                }
            }
        }
        (plus, minus)
    }

    /// Coefficients constant on orbits of the maps.
    pub fn check_stable(&self, field: &GaloisField, maps: &[AffineMap]) -> Result<()> {
        for (w, n) in self.support() {
            for s in maps {
                let image = w.image(field, s);
                let m = self.coefficient(&image);
                if m != n {
                    return Err(OracleError::NotStable {
                        point: w.to_string(),
                        coefficient: n,
                        image: image.to_string(),
                        image_coefficient: m,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn from_spec(field: &GaloisField, spec: &DivisorSpec) -> Result<Self> {
        let mut d = Self::zero();
        d.add_at(P1ClosedPoint::Infinity, spec.infinity);
        for pt in &spec.points {
            d.add_at(
                P1ClosedPoint::finite(field, Poly::new(pt.poly.clone()))?,
                pt.mult,
            );
        }
        Ok(d)
    }

    pub fn spec(&self) -> DivisorSpec {
        let points = self
            .support()
            .filter_map(|(w, n)| match w {
                P1ClosedPoint::Finite(f) => Some(PointSpec {
                    poly: f.coeffs().to_vec(),
                    mult: n,
                }),
                P1ClosedPoint::Infinity => None,
            })
            .collect();
        DivisorSpec {
            infinity: self.at_infinity(),
            points,
        }
    }
}

impl fmt::Display for GDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.support().map(|(w, n)| format!("{n}{w}")).collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
