//! Finite fields `F_{p^n}` with table arithmetic.
//!
//! Elements are `u32` codes: the coefficient vector `(c_0, .., c_{n-1})` of the
//! residue modulo the defining polynomial, read as base-`p` digits. The prime
//! subfield is therefore `0..p`.
//!
//! Every field carries a distinguished primitive element taken from a
//! pseudo-Conway tower: for each `d | n` the generator of `F_{p^n}` raised to
//! `(p^n-1)/(p^d-1)` is the generator of `F_{p^d}`. Embeddings and the lift of
//! roots of unity are defined through discrete logarithms relative to it, so
//! they agree across the whole tower.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, is_prime, prime_factors};
use crate::error::{AlgebraError, Result};

/// Field element code.
pub type Fe = u32;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 22;

struct FieldData {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Fe,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

/// A finite field handle; cheap to clone.
#[derive(Clone)]
pub struct GaloisField(Arc<FieldData>);

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.n == other.0.n && self.0.modulus == other.0.modulus)
    }
}
impl Eq for GaloisField {}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}{:?}", self.0.p, self.0.n, self.0.modulus)
    }
}

/// Serializable description of a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub n: u32,
    /// Monic defining polynomial, constant term first.
    pub modulus: Vec<u32>,
}

fn registry() -> &'static Mutex<HashMap<(u32, u32), GaloisField>> {
    static REG: OnceLock<Mutex<HashMap<(u32, u32), GaloisField>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl GaloisField {
    /// The tower field of order `p^n`.
    pub fn conway(p: u32, n: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(AlgebraError::NotPrime(p as u64));
        }
        if n == 0 {
            return Err(AlgebraError::ZeroDegree);
        }
        if (p as u64)
            .checked_pow(n)
            .map_or(true, |q| q > MAX_FIELD_ORDER)
        {
            return Err(AlgebraError::FieldTooLarge { p, n });
        }
        if let Some(f) = registry().lock().unwrap().get(&(p, n)) {
            return Ok(f.clone());
        }
        let modulus = search_tower_polynomial(p, n)?;
        let field = Self::build(p, n, modulus.clone(), vec![0, 1], true)?;
        registry()
            .lock()
            .unwrap()
            .entry((p, n))
            .or_insert_with(|| field.clone());
        Ok(field)
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::conway(p, 1)
    }

    /// Field of order `p^n` given by a user supplied monic modulus (constant
    /// term first). The tower generator is located inside it as the root of
    /// the tower polynomial with the smallest code.
    pub fn with_modulus(p: u32, n: u32, modulus: &[u32]) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(AlgebraError::NotPrime(p as u64));
        }
        if n == 0 {
            return Err(AlgebraError::ZeroDegree);
        }
        if (p as u64)
            .checked_pow(n)
            .map_or(true, |q| q > MAX_FIELD_ORDER)
        {
            return Err(AlgebraError::FieldTooLarge { p, n });
        }
        let m: Vec<u32> = modulus.iter().map(|c| c % p).collect();
        let deg = fp::degree(&m);
        if deg != Some(n as usize) || m[n as usize] != 1 {
            return Err(AlgebraError::BadModulus {
                expected: n as usize,
                got: deg.unwrap_or(0),
            });
        }
        let m = m[..=n as usize].to_vec();
        if !fp::is_irreducible(&m, p) {
            return Err(AlgebraError::ReducibleModulus(p));
        }
        let tower = Self::conway(p, n)?;
        if tower.0.modulus == m {
            return Ok(tower);
        }
        let tower_poly = tower.0.modulus.clone();
        // Root search with slow arithmetic; the field is at most MAX_FIELD_ORDER.
        let q = p.pow(n);
        let mut root = None;
        for cand in 0..q {
            let y = fp::decode(cand, p, n as usize);
            if fp::is_zero(&fp::eval_at(&tower_poly, &y, &m, p)) {
                root = Some(cand);
                break;
            }
        }
        let root = root.expect("an irreducible modulus of degree n splits the tower polynomial");
        Self::build(p, n, m, fp::decode(root, p, n as usize), false)
    }

    fn build(
        p: u32,
        n: u32,
        modulus: Vec<u32>,
        gen_poly: Vec<u32>,
        is_tower: bool,
    ) -> Result<Self> {
        let q = p.pow(n);
        let nu = n as usize;
        let mut exp = vec![0u32; 2 * (q as usize - 1).max(1)];
        let mut log = vec![0u32; q as usize];
        let gen_poly = fp::rem(&gen_poly, &modulus, p);
        let mut cur = vec![1u32];
        for i in 0..(q - 1) as usize {
            let code = fp::encode(&cur, p, nu);
            exp[i] = code;
            log[code as usize] = i as u32;
            cur = fp::rem(&fp::mul(&cur, &gen_poly, p), &modulus, p);
        }
        if q > 1 {
            for i in (q - 1) as usize..exp.len() {
                exp[i] = exp[i - (q - 1) as usize];
            }
        }
        let generator = fp::encode(&gen_poly, p, nu);
        debug_assert!(!is_tower || generator == if n == 1 { exp[1] } else { p });
        let add_table = if n > 1 && q <= 1024 {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = digit_add(a, b, p, n);
                }
            }
            Some(t)
        } else {
            None
        };
        Ok(GaloisField(Arc::new(FieldData {
            p,
            n,
            q,
            modulus,
            generator,
            exp,
            log,
            add_table,
        })))
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        Self::with_modulus(spec.p, spec.n, &spec.modulus)
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.0.p,
            n: self.0.n,
            modulus: self.0.modulus.clone(),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }
    pub fn degree(&self) -> u32 {
        self.0.n
    }
    pub fn order(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }
    /// The tower generator (a primitive element).
    pub fn generator(&self) -> Fe {
        self.0.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.0.q
    }

    pub fn from_i64(&self, x: i64) -> Fe {
        x.rem_euclid(self.0.p as i64) as Fe
    }

    /// Base-`p` digits of an element (constant coefficient first).
    pub fn digits(&self, a: Fe) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.0.n as usize);
        let mut a = a;
        for _ in 0..self.0.n {
            v.push(a % self.0.p);
            a /= self.0.p;
        }
        v
    }

    pub fn from_digits(&self, digits: &[u32]) -> Fe {
        fp::encode(
            &digits.iter().map(|d| d % self.0.p).collect::<Vec<_>>(),
            self.0.p,
            self.0.n as usize,
        )
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let d = &*self.0;
        if d.n == 1 {
            let s = a + b;
            if s >= d.p {
                s - d.p
            } else {
                s
            }
        } else if let Some(t) = &d.add_table {
            t[(a * d.q + b) as usize]
        } else {
            digit_add(a, b, d.p, d.n)
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        let d = &*self.0;
        if d.n == 1 {
            if a == 0 {
                0
            } else {
                d.p - a
            }
        } else {
            let mut out = 0;
            let mut pw = 1;
            let mut a = a;
            for _ in 0..d.n {
                let x = a % d.p;
                out += ((d.p - x) % d.p) * pw;
                pw *= d.p;
                a /= d.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a == 0 || b == 0 {
            return 0;
        }
        let d = &*self.0;
        d.exp[(d.log[a as usize] + d.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a == 0 {
            return Err(AlgebraError::ZeroElement);
        }
        let d = &*self.0;
        let l = d.log[a as usize];
        Ok(d.exp[((d.q - 1 - l) % (d.q - 1)) as usize])
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, e: i64) -> Fe {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let d = &*self.0;
        let m = (d.q - 1) as i64;
        let l = (d.log[a as usize] as i64 * e.rem_euclid(m)).rem_euclid(m);
        d.exp[l as usize]
    }

    /// Discrete logarithm relative to the tower generator.
    pub fn log(&self, a: Fe) -> Result<u64> {
        if a == 0 {
            return Err(AlgebraError::ZeroElement);
        }
        Ok(self.0.log[a as usize] as u64)
    }

    /// `generator^k`.
    pub fn exp(&self, k: i64) -> Fe {
        let m = (self.0.q - 1) as i64;
        self.0.exp[k.rem_euclid(m) as usize]
    }

    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.0.p as i64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Fe) -> Result<u64> {
        let l = self.log(a)?;
        let m = (self.0.q - 1) as u64;
        Ok(m / crate::arith::gcd(l, m))
    }

    pub fn is_subfield_of(&self, big: &GaloisField) -> bool {
        self.0.p == big.0.p && big.0.n % self.0.n == 0
    }

    /// Tower embedding of an element of `self` into `big`.
    pub fn embed_into(&self, big: &GaloisField, a: Fe) -> Result<Fe> {
        if !self.is_subfield_of(big) {
            return Err(AlgebraError::NotASubfield {
                p: self.0.p,
                small: self.0.n,
                big: big.0.n,
            });
        }
        if a == 0 {
            return Ok(0);
        }
        let ratio = (big.0.q as u64 - 1) / (self.0.q as u64 - 1);
        let l = self.log(a)? * ratio;
        Ok(big.exp(l as i64))
    }

    /// Inverse of [`embed_into`](Self::embed_into) for elements lying in the subfield.
    pub fn restrict_from(&self, big: &GaloisField, a: Fe) -> Result<Option<Fe>> {
        if !self.is_subfield_of(big) {
            return Err(AlgebraError::NotASubfield {
                p: self.0.p,
                small: self.0.n,
                big: big.0.n,
            });
        }
        if a == 0 {
            return Ok(Some(0));
        }
        let ratio = (big.0.q as u64 - 1) / (self.0.q as u64 - 1);
        let l = big.log(a)?;
        if l % ratio != 0 {
            return Ok(None);
        }
        Ok(Some(self.exp((l / ratio) as i64)))
    }

    /// Smallest common tower field containing `self` and `other`.
    pub fn compositum(&self, other: &GaloisField) -> Result<GaloisField> {
        if self.0.p != other.0.p {
            return Err(AlgebraError::FieldMismatch(format!(
                "{:?} vs {:?}",
                self, other
            )));
        }
        let n = crate::arith::lcm(self.0.n as u64, other.0.n as u64) as u32;
        GaloisField::conway(self.0.p, n)
    }
}

fn digit_add(a: u32, b: u32, p: u32, n: u32) -> u32 {
    if p == 2 {
        return a ^ b;
    }
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut pw = 1;
    for _ in 0..n {
        let s = (a % p + b % p) % p;
        out += s * pw;
        pw *= p;
        a /= p;
        b /= p;
    }
    out
}

/// Deterministic search for the tower polynomial of degree `n` over `F_p`.
///
/// Candidates `x^n + c_{n-1} x^{n-1} + .. + c_0` are visited with the digit
/// vector `(c_{n-1}, .., c_0)` increasing lexicographically. A candidate is
/// accepted when `x` has multiplicative order `p^n - 1` modulo it and, for every
/// proper divisor `d` of `n`, `x^((p^n-1)/(p^d-1))` is a root of the tower
/// polynomial of degree `d`.
fn search_tower_polynomial(p: u32, n: u32) -> Result<Vec<u32>> {
    if n == 1 {
        let g = smallest_primitive_root(p);
        return Ok(vec![(p - g) % p, 1]);
    }
    let q = (p as u64).pow(n);
    let order = q - 1;
    let order_primes = prime_factors(order);
    let mut lower = Vec::new();
    for d in divisors(n as u64) {
        if d < n as u64 {
            let f = GaloisField::conway(p, d as u32)?;
            lower.push((d as u32, f.modulus().to_vec()));
        }
    }
    let nu = n as usize;
    for idx in 0..q {
        // digits most significant first correspond to c_{n-1}
        let mut coeffs = vec![0u32; nu + 1];
        coeffs[nu] = 1;
        let mut t = idx;
        for c in coeffs.iter_mut().take(nu) {
            *c = (t % p as u64) as u32;
            t /= p as u64;
        }
        if coeffs[0] == 0 {
            continue;
        }
        let x = vec![0, 1];
        if !fp::is_one(&fp::pow_mod(&x, order, &coeffs, p)) {
            continue;
        }
        if order_primes
            .iter()
            .any(|&r| fp::is_one(&fp::pow_mod(&x, order / r, &coeffs, p)))
        {
            continue;
        }
        let compatible = lower.iter().all(|(d, cd)| {
            let e = order / ((p as u64).pow(*d) - 1);
            let y = fp::pow_mod(&x, e, &coeffs, p);
            fp::is_zero(&fp::eval_at(cd, &y, &coeffs, p))
        });
        if compatible {
            return Ok(coeffs);
        }
    }
    unreachable!("a compatible primitive polynomial always exists")
}

fn smallest_primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let primes = prime_factors(p as u64 - 1);
    (2..p)
        .find(|&g| {
            primes
                .iter()
                .all(|&r| crate::arith::pow_mod(g as u64, (p as u64 - 1) / r, p as u64) != 1)
        })
        .unwrap()
}

/// Dense polynomial helpers over a prime field, used before tables exist.
pub(crate) mod fp {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }
    pub fn degree(a: &[u32]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }
    pub fn is_zero(a: &[u32]) -> bool {
        a.iter().all(|&c| c == 0)
    }
    pub fn is_one(a: &[u32]) -> bool {
        !a.is_empty() && a[0] == 1 && a[1..].iter().all(|&c| c == 0)
    }
    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut v: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut v);
        v
    }
    pub fn inv(a: u32, p: u32) -> u32 {
        crate::arith::pow_mod(a as u64, p as u64 - 2, p as u64) as u32
    }
    /// Remainder modulo a polynomial with nonzero leading coefficient.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = degree(m).expect("nonzero modulus");
        let lead_inv = inv(m[dm], p) as u64;
        while let Some(dr) = degree(&r) {
            if dr < dm {
                break;
            }
            let c = r[dr] as u64 * lead_inv % p as u64;
            let shift = dr - dm;
            for (i, &mc) in m[..=dm].iter().enumerate() {
                let sub = c * mc as u64 % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }
    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut v: Vec<u32> = (0..n)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0);
                let y = *b.get(i).unwrap_or(&0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut v);
        v
    }
    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }
    pub fn pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        acc
    }
    /// Evaluate `g` (coefficients in `F_p`) at the residue `y` modulo `m`.
    pub fn eval_at(g: &[u32], y: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut acc: Vec<u32> = vec![];
        for &c in g.iter().rev() {
            acc = rem(&mul(&acc, y, p), m, p);
            if c != 0 {
                if acc.is_empty() {
                    acc.push(0);
                }
                acc[0] = (acc[0] + c) % p;
                trim(&mut acc);
            }
        }
        acc
    }
    pub fn encode(a: &[u32], p: u32, n: usize) -> u32 {
        let mut code = 0u32;
        for i in (0..n).rev() {
            code = code * p + a.get(i).copied().unwrap_or(0);
        }
        code
    }
    pub fn decode(mut code: u32, p: u32, n: usize) -> Vec<u32> {
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push(code % p);
            code /= p;
        }
        trim(&mut v);
        v
    }
    /// Rabin irreducibility test for a monic polynomial of degree >= 1.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let n = match degree(f) {
            Some(d) if d >= 1 => d as u64,
            _ => return false,
        };
        let x = vec![0u32, 1];
        let frob_iter = |k: u64| {
            let mut y = x.clone();
            for _ in 0..k {
                y = pow_mod(&y, p as u64, f, p);
            }
            y
        };
        if !is_zero(&sub(&frob_iter(n), &x, p)) {
            return false;
        }
        for r in crate::arith::prime_factors(n) {
            let y = frob_iter(n / r);
            let g = gcd(&sub(&y, &x, p), f, p);
            if degree(&g) != Some(0) {
                return false;
            }
        }
        true
    }
}

/// A field element bundled with its field, for serialization boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElem {
    pub field: GaloisField,
    pub value: Fe,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldElemSpec {
    pub field: FieldSpec,
    /// Coefficients over `F_p`, constant term first.
    pub coefficients: Vec<u32>,
}

impl FieldElem {
    pub fn new(field: &GaloisField, value: Fe) -> Self {
        FieldElem {
            field: field.clone(),
            value: value % field.order(),
        }
    }
    pub fn spec(&self) -> FieldElemSpec {
        FieldElemSpec {
            field: self.field.spec(),
            coefficients: self.field.digits(self.value),
        }
    }
    pub fn from_spec(spec: &FieldElemSpec) -> Result<Self> {
        let f = GaloisField::from_spec(&spec.field)?;
        let v = f.from_digits(&spec.coefficients);
        Ok(FieldElem { field: f, value: v })
    }
}
