//! Dense univariate polynomials over a [`GaloisField`] and their factorization.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::field::{Fe, GaloisField};

/// Coefficients with the constant term first; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly(pub Vec<Fe>);

impl Poly {
    pub fn new(mut c: Vec<Fe>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly(c)
    }
    pub fn zero() -> Self {
        Poly(vec![])
    }
    pub fn one() -> Self {
        Poly(vec![1])
    }
    pub fn x() -> Self {
        Poly(vec![0, 1])
    }
    pub fn constant(c: Fe) -> Self {
        Poly::new(vec![c])
    }
    pub fn monomial(c: Fe, d: usize) -> Self {
        let mut v = vec![0; d + 1];
        v[d] = c;
        Poly::new(v)
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }
    pub fn leading(&self) -> Fe {
        *self.0.last().unwrap_or(&0)
    }
    pub fn coeff(&self, i: usize) -> Fe {
        self.0.get(i).copied().unwrap_or(0)
    }
    pub fn coeffs(&self) -> &[Fe] {
        &self.0
    }
}

/// Polynomial arithmetic bound to a field.
#[derive(Clone, Debug)]
pub struct PolyRing {
    pub field: GaloisField,
}

impl PolyRing {
    pub fn new(field: &GaloisField) -> Self {
        PolyRing {
            field: field.clone(),
        }
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let k = &self.field;
        let n = a.0.len().max(b.0.len());
        Poly::new((0..n).map(|i| k.add(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let k = &self.field;
        let n = a.0.len().max(b.0.len());
        Poly::new((0..n).map(|i| k.sub(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn scale(&self, a: &Poly, c: Fe) -> Poly {
        Poly::new(a.0.iter().map(|&x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let k = &self.field;
        let mut out = vec![0; a.0.len() + b.0.len() - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(x, y));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, a: &Poly, mut e: u64) -> Poly {
        let mut acc = Poly::one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    pub fn div_rem(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
        let db = b.degree().ok_or(AlgebraError::ZeroPolynomial)?;
        let k = &self.field;
        let inv_lead = k.inv(b.leading())?;
        let mut r = a.0.clone();
        let mut q = vec![0; a.0.len().saturating_sub(db).max(1)];
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let c = k.mul(r[dr], inv_lead);
            let shift = dr - db;
            q[shift] = c;
            for (i, &bc) in b.0.iter().enumerate() {
                r[shift + i] = k.sub(r[shift + i], k.mul(c, bc));
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        Ok((Poly::new(q), Poly::new(r)))
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        Ok(self.div_rem(a, b)?.1)
    }

    pub fn monic(&self, a: &Poly) -> Poly {
        if a.is_zero() {
            return a.clone();
        }
        let inv = self.field.inv(a.leading()).unwrap();
        self.scale(a, inv)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = self.rem(&a, &b).unwrap();
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    pub fn derivative(&self, a: &Poly) -> Poly {
        let k = &self.field;
        Poly::new(
            a.0.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| k.mul(k.from_i64(i as i64), c))
                .collect(),
        )
    }

    pub fn eval(&self, a: &Poly, x: Fe) -> Fe {
        let k = &self.field;
        a.0.iter().rev().fold(0, |acc, &c| k.add(k.mul(acc, x), c))
    }

    /// `base^e mod m` for an arbitrary-size exponent.
    pub fn pow_mod(&self, base: &Poly, e: &BigUint, m: &Poly) -> Poly {
        let mut acc = Poly::one();
        let b = self.rem(base, m).unwrap();
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m).unwrap();
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &b), m).unwrap();
            }
        }
        self.rem(&acc, m).unwrap()
    }

    /// `a^(q^k) mod m` by repeated Frobenius.
    fn frobenius_pow_mod(&self, a: &Poly, k: u32, m: &Poly) -> Poly {
        let q = BigUint::from(self.field.order());
        let mut y = self.rem(a, m).unwrap();
        for _ in 0..k {
            y = self.pow_mod(&y, &q, m);
        }
        y
    }

    /// Rabin irreducibility test.
    pub fn is_irreducible(&self, f: &Poly) -> bool {
        let n = match f.degree() {
            Some(d) if d >= 1 => d as u32,
            _ => return false,
        };
        let f = self.monic(f);
        let x = Poly::x();
        let y = self.frobenius_pow_mod(&x, n, &f);
        if !self.rem(&self.sub(&y, &x), &f).unwrap().is_zero() {
            return false;
        }
        for r in crate::arith::prime_factors(n as u64) {
            let y = self.frobenius_pow_mod(&x, n / r as u32, &f);
            let g = self.gcd(&self.sub(&y, &x), &f);
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// `p`-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self, a: &Poly) -> Poly {
        let k = &self.field;
        let p = k.characteristic() as usize;
        // a^(1/p) = a^(q/p) coefficientwise
        let e = (k.order() / k.characteristic()) as i64;
        Poly::new(a.0.iter().step_by(p).map(|&c| k.pow(c, e)).collect())
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with
    /// pairwise coprime squarefree `g`.
    pub fn squarefree(&self, f: &Poly) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        self.squarefree_into(&self.monic(f), 1, &mut out);
        out.sort();
        out
    }

    fn squarefree_into(&self, f: &Poly, mult: usize, out: &mut Vec<(Poly, usize)>) {
        if f.degree().unwrap_or(0) == 0 {
            return;
        }
        let p = self.field.characteristic() as usize;
        let df = self.derivative(f);
        if df.is_zero() {
            let r = self.pth_root(f);
            self.squarefree_into(&r, mult * p, out);
            return;
        }
        let mut c = self.gcd(f, &df);
        let mut w = self.div_rem(f, &c).unwrap().0;
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let y = self.gcd(&w, &c);
            let z = self.div_rem(&w, &y).unwrap().0;
            if z.degree().unwrap_or(0) > 0 {
                out.push((self.monic(&z), i * mult));
            }
            w = y;
            c = self.div_rem(&c, &w).unwrap().0;
            i += 1;
        }
        if c.degree().unwrap_or(0) > 0 {
            let r = self.pth_root(&c);
            self.squarefree_into(&r, mult * p, out);
        }
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    pub fn distinct_degree(&self, f: &Poly) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        let mut f = self.monic(f);
        let x = Poly::x();
        let mut h = x.clone();
        let mut d = 0;
        let q = BigUint::from(self.field.order());
        while f.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = self.pow_mod(&h, &q, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), d));
                f = self.div_rem(&f, &g).unwrap().0;
                h = self.rem(&h, &f).unwrap();
            }
        }
        if let Some(df) = f.degree() {
            if df > 0 {
                out.push((f, df));
            }
        }
        out
    }

    /// Split a monic squarefree product of irreducibles of degree `d`.
    pub fn equal_degree(&self, f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
        let n = f.degree().unwrap_or(0);
        if n == d {
            return vec![f.clone()];
        }
        let k = &self.field;
        let q = k.order() as u64;
        loop {
            let r = Poly::new((0..n).map(|_| rng.gen_range(0..q as u32)).collect());
            if r.degree().unwrap_or(0) == 0 {
                continue;
            }
            let g = if q % 2 == 1 {
                let e = (BigUint::from(q).pow(d as u32) - 1u32) / 2u32;
                let t = self.pow_mod(&r, &e, f);
                self.gcd(&self.sub(&t, &Poly::one()), f)
            } else {
                // trace from F_{q^d} down to F_2
                let bits = (k.degree() as usize) * d;
                let mut t = self.rem(&r, f).unwrap();
                let mut acc = t.clone();
                for _ in 1..bits {
                    t = self.rem(&self.mul(&t, &t), f).unwrap();
                    acc = self.add(&acc, &t);
                }
                self.gcd(&acc, f)
            };
            let dg = g.degree().unwrap_or(0);
            if dg > 0 && dg < n {
                let h = self.div_rem(f, &g).unwrap().0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&self.monic(&h), d, rng));
                return out;
            }
        }
    }

    /// Full factorization into monic irreducibles with multiplicities, plus the
    /// leading coefficient. The output order is canonical (sorted), so it does
    /// not depend on the seed.
    pub fn factor(&self, f: &Poly, seed: u64) -> Result<(Fe, Vec<(Poly, usize)>)> {
        if f.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let lead = f.leading();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        for (g, m) in self.squarefree(f) {
            for (h, d) in self.distinct_degree(&g) {
                for irr in self.equal_degree(&h, d, &mut rng) {
                    out.push((irr, m));
                }
            }
        }
        out.sort_by(|a, b| (a.0.degree(), &a.0 .0, a.1).cmp(&(b.0.degree(), &b.0 .0, b.1)));
        Ok((lead, out))
    }

    /// Roots in the field with multiplicities.
    pub fn roots(&self, f: &Poly) -> Result<Vec<(Fe, usize)>> {
        let (_, fac) = self.factor(f, 0)?;
        Ok(fac
            .into_iter()
            .filter(|(g, _)| g.degree() == Some(1))
            .map(|(g, m)| (self.field.neg(g.coeff(0)), m))
            .collect())
    }

    /// Multiplicity of `x` as a root of `f`.
    pub fn root_multiplicity(&self, f: &Poly, x: Fe) -> usize {
        let k = &self.field;
        let mut g = f.clone();
        let mut m = 0;
        loop {
            if g.is_zero() {
                return m;
            }
            // synthetic division by (X - x)
            let n = g.0.len();
            let mut q = vec![0; n.saturating_sub(1)];
            let mut acc = 0;
            for i in (0..n).rev() {
                acc = k.add(k.mul(acc, x), g.0[i]);
                if i > 0 {
                    q[i - 1] = acc;
                }
            }
            if acc != 0 {
                return m;
            }
            m += 1;
            g = Poly::new(q);
        }
    }

    /// Map coefficients into an extension along the tower embedding.
    pub fn embed(&self, a: &Poly, big: &GaloisField) -> Result<Poly> {
        Ok(Poly::new(
            a.0.iter()
                .map(|&c| self.field.embed_into(big, c))
                .collect::<Result<Vec<_>>>()?,
        ))
    }
}
