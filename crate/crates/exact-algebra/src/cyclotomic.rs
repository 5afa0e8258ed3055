//! Exact arithmetic in cyclotomic fields `Q(zeta_m)`.
//!
//! A [`CycNumber`] stores integer coordinates in the power basis
//! `1, zeta, .., zeta^(phi(m)-1)` together with one positive common
//! denominator, always in lowest terms. Values with different conductors are
//! combined in `Q(zeta_lcm)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{divisors, euler_phi, gcd, lcm};
use crate::error::{AlgebraError, Result};

/// Integer coefficients of the `m`-th cyclotomic polynomial, constant first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    // x^m - 1 divided by all Phi_d with d | m, d < m
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in divisors(m) {
        if d < m {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    assert_eq!(b[db], 1);
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

pub(crate) struct CycContext {
    pub deg: usize,
    /// Reduced coordinates of `zeta^k` for `k` in `0..m`.
    pub powers: Vec<Vec<i64>>,
}

pub(crate) fn context(m: u64) -> Arc<CycContext> {
    static REG: OnceLock<Mutex<HashMap<u64, Arc<CycContext>>>> = OnceLock::new();
    let reg = REG.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = reg.lock().unwrap().get(&m) {
        return c.clone();
    }
    let phi = cyclotomic_polynomial(m);
    let deg = euler_phi(m) as usize;
    let mut powers = Vec::with_capacity(m as usize);
    let mut cur = vec![0i64; deg];
    cur[0] = 1;
    for _ in 0..m {
        powers.push(cur.clone());
        // multiply by zeta
        let top = cur[deg - 1];
        for i in (1..deg).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..deg {
                cur[i] -= top * phi[i];
            }
        }
    }
    let ctx = Arc::new(CycContext { deg, powers });
    reg.lock().unwrap().insert(m, ctx.clone());
    ctx
}

#[derive(Clone)]
pub struct CycNumber {
    m: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNumber {
    pub fn zero(m: u64) -> Self {
        let deg = euler_phi(m.max(1)) as usize;
        CycNumber {
            m: m.max(1),
            num: vec![BigInt::zero(); deg],
            den: BigInt::one(),
        }
    }

    pub fn one(m: u64) -> Self {
        Self::from_int(m, 1)
    }

    pub fn from_int(m: u64, v: i64) -> Self {
        let mut z = Self::zero(m);
        z.num[0] = BigInt::from(v);
        z
    }

    pub fn from_rational(m: u64, r: &BigRational) -> Self {
        let mut z = Self::zero(m);
        z.num[0] = r.numer().clone();
        z.den = r.denom().clone();
        z.normalize();
        z
    }

    /// `zeta_m^k`.
    pub fn zeta_power(m: u64, k: i64) -> Self {
        let ctx = context(m);
        let idx = k.rem_euclid(m as i64) as usize;
        CycNumber {
            m,
            num: ctx.powers[idx].iter().map(|&c| BigInt::from(c)).collect(),
            den: BigInt::one(),
        }
    }

    /// Build from integer coordinates in the power basis of degree < phi(m),
    /// scaled by `1/den`.
    pub fn from_coordinates(m: u64, num: Vec<BigInt>, den: BigInt) -> Result<Self> {
        let deg = euler_phi(m) as usize;
        if num.len() > deg {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} coordinates for conductor {m} (degree {deg})",
                num.len()
            )));
        }
        if den.is_zero() {
            return Err(AlgebraError::NotIntegral("zero denominator".into()));
        }
        let mut v = num;
        v.resize(deg, BigInt::zero());
        let mut z = CycNumber { m, num: v, den };
        z.normalize();
        Ok(z)
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    /// Rational coordinates in the power basis.
    pub fn coordinates(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in self.num.iter_mut() {
                *c = -c.clone();
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() && !g.is_zero() {
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    /// The same number viewed in `Q(zeta_big)` where `m | big`.
    pub fn coerce(&self, big: u64) -> Self {
        if big == self.m {
            return self.clone();
        }
        assert!(
            big % self.m == 0,
            "conductor {} does not divide {}",
            self.m,
            big
        );
        let ctx = context(big);
        let step = big / self.m;
        let mut out = vec![BigInt::zero(); ctx.deg];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &ctx.powers[(i as u64 * step % big) as usize];
            for (t, &r) in row.iter().enumerate() {
                if r != 0 {
                    out[t] += c * r;
                }
            }
        }
        CycNumber {
            m: big,
            num: out,
            den: self.den.clone(),
        }
    }

    /// The same number in `Q(zeta_target)`, if it lies there.
    pub fn to_conductor(&self, target: u64) -> Option<Self> {
        if target % self.m == 0 {
            return Some(self.coerce(target));
        }
        let big = lcm(self.m, target);
        let v = self.coerce(big).coordinates();
        let ctx = context(big);
        let step = big / target;
        let unknowns = euler_phi(target) as usize;
        // columns: coordinates of zeta_target^i inside Q(zeta_big), then v
        let mut rows: Vec<Vec<BigRational>> = (0..ctx.deg)
            .map(|t| {
                let mut row: Vec<BigRational> = (0..unknowns)
                    .map(|i| {
                        BigRational::from_integer(
                            ctx.powers[(i as u64 * step % big) as usize][t].into(),
                        )
                    })
                    .collect();
                row.push(v[t].clone());
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..unknowns {
            let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, pr);
            let inv = rows[r][c].recip();
            for x in rows[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..rows.len() {
                if i != r && !rows[i][c].is_zero() {
                    let f = rows[i][c].clone();
                    for j in 0..=unknowns {
                        let d = &f * &rows[r][j];
                        rows[i][j] -= d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if rows[r..].iter().any(|row| !row[unknowns].is_zero()) {
            return None;
        }
        let mut coords = vec![BigRational::zero(); unknowns];
        for (i, &c) in pivots.iter().enumerate() {
            coords[c] = rows[i][unknowns].clone();
        }
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let num = coords
            .iter()
            .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        Self::from_coordinates(target, num, den).ok()
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.m == b.m {
            return (a.clone(), b.clone());
        }
        let m = lcm(a.m, b.m);
        (a.coerce(m), b.coerce(m))
    }

    /// Rational value when the number lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        // A rational number has coordinates (r, 0, .., 0) in the power basis.
        if self.num.iter().skip(1).all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        let r = self.to_rational()?;
        if r.is_integer() {
            Some(r.to_integer())
        } else {
            None
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        self.to_integer()?.to_i64()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let mut z = CycNumber {
            m: self.m,
            num: self.num.iter().map(|c| c * r.numer()).collect(),
            den: &self.den * r.denom(),
        };
        z.normalize();
        z
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    /// The automorphism `zeta -> zeta^k` for `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let ctx = context(self.m);
        let mut out = vec![BigInt::zero(); ctx.deg];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &ctx.powers[(i as i64 * k).rem_euclid(self.m as i64) as usize];
            for (t, &r) in row.iter().enumerate() {
                if r != 0 {
                    out[t] += c * r;
                }
            }
        }
        CycNumber {
            m: self.m,
            num: out,
            den: self.den.clone(),
        }
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> BigRational {
        let mut acc = CycNumber::one(self.m);
        for k in 1..=self.m {
            if gcd(k, self.m) == 1 {
                acc = &acc * &self.galois(k as i64);
            }
        }
        acc.to_rational().expect("norm is rational")
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroElement);
        }
        let mut others = CycNumber::one(self.m);
        for k in 2..=self.m {
            if gcd(k, self.m) == 1 {
                others = &others * &self.galois(k as i64);
            }
        }
        let n = (self * &others).to_rational().expect("norm is rational");
        Ok(others.scale(&n.recip()))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = CycNumber::one(self.m);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.num
    }
    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = CycNumber::common(self, other);
        a.den == b.den && a.num == b.num
    }
}
impl Eq for CycNumber {}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        let (a, b) = CycNumber::common(self, rhs);
        let num = if a.den == b.den {
            a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect()
        } else {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| x * &b.den + y * &a.den)
                .collect()
        };
        let den = if a.den == b.den {
            a.den.clone()
        } else {
            &a.den * &b.den
        };
        let mut z = CycNumber { m: a.m, num, den };
        z.normalize();
        z
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        self + &(-rhs)
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            m: self.m,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        let (a, b) = CycNumber::common(self, rhs);
        let ctx = context(a.m);
        let deg = ctx.deg;
        let mut conv = vec![BigInt::zero(); 2 * deg - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut out = vec![BigInt::zero(); deg];
        for (k, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < deg {
                out[k] += c;
            } else {
                let row = &ctx.powers[k % a.m as usize];
                for (t, &r) in row.iter().enumerate() {
                    if r != 0 {
                        out[t] += &c * r;
                    }
                }
            }
        }
        let mut z = CycNumber {
            m: a.m,
            num: out,
            den: &a.den * &b.den,
        };
        z.normalize();
        z
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $f(self, rhs: CycNumber) -> CycNumber {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", r);
        }
        let mut parts = Vec::new();
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match i {
                0 => format!("{}", c),
                1 => format!("{}*z{}", c, self.m),
                _ => format!("{}*z{}^{}", c, self.m, i),
            };
            parts.push(term);
        }
        let body = parts.join(" + ").replace("+ -", "- ");
        if self.den.is_one() {
            write!(f, "{}", body)
        } else {
            write!(f, "({})/{}", body, self.den)
        }
    }
}

/// Wire format: conductor plus rational coordinate strings.
#[derive(Serialize, Deserialize)]
struct CycWire {
    m: u64,
    coefficients: Vec<String>,
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycWire {
            m: self.m,
            coefficients: self.coordinates().iter().map(|r| r.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = CycWire::deserialize(d)?;
        if w.m == 0 {
            return Err(serde::de::Error::custom("conductor must be positive"));
        }
        let deg = euler_phi(w.m) as usize;
        if w.coefficients.len() > deg {
            return Err(serde::de::Error::custom(format!(
                "too many coefficients for conductor {}",
                w.m
            )));
        }
        let mut acc = CycNumber::zero(w.m);
        for (i, s) in w.coefficients.iter().enumerate() {
            let r = parse_rational(s).map_err(serde::de::Error::custom)?;
            let mut term = CycNumber::zero(w.m);
            term.num[i] = r.numer().clone();
            term.den = r.denom().clone();
            term.normalize();
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a = BigInt::from_str(a.trim()).map_err(|_| AlgebraError::ParseRational(s.into()))?;
        let b = BigInt::from_str(b.trim()).map_err(|_| AlgebraError::ParseRational(s.into()))?;
        if b.is_zero() {
            return Err(AlgebraError::ParseRational(s.into()));
        }
        Ok(BigRational::new(a, b))
    } else {
        let a = BigInt::from_str(s).map_err(|_| AlgebraError::ParseRational(s.into()))?;
        Ok(BigRational::from_integer(a))
    }
}
