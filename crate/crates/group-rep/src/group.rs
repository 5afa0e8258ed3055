//! Finite groups stored as multiplication tables.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use exact_algebra::arith::{gcd, lcm};
use exact_algebra::{Fe, GaloisField};
use serde::{Deserialize, Serialize};

use crate::error::{GroupError, Result};

pub const MAX_GROUP_ORDER: usize = 512;

/// Exhaustive associativity checks run up to this order; larger tables are
/// spot-checked on a fixed sample.
const FULL_CHECK_ORDER: usize = 128;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Conjugacy classes in canonical order: by element order, then by smallest
/// element index.
#[derive(Debug)]
pub struct ClassData {
    pub reps: Vec<usize>,
    pub class_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

/// The classes of elements of order prime to `p`, in canonical order.
#[derive(Debug)]
pub struct RegularClasses {
    pub p: u32,
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
    /// Index into `reps` for each p-regular element, `None` otherwise.
    pub class_of: Vec<Option<usize>>,
    /// Exponent of the p-regular part of the group.
    pub conductor: u64,
}

struct GroupData {
    id: u64,
    n: usize,
    table: Vec<u16>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    labels: Vec<String>,
    orders: Vec<u64>,
    classes: OnceLock<Arc<ClassData>>,
    regular: Mutex<HashMap<u32, Arc<RegularClasses>>>,
}

#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupData>);

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}
impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteGroup(order {}, gens {:?})",
            self.0.n, self.0.generators
        )
    }
}

/// Serialized form of a group.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupSpec {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub generators: Vec<usize>,
    pub labels: Vec<String>,
}

impl FiniteGroup {
    /// Validate a multiplication table and build the group.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        generators: Vec<usize>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        if labels.len() != n {
            return Err(GroupError::NotAGroup(format!(
                "{} labels for {n} elements",
                labels.len()
            )));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotAGroup(format!(
                    "row {i} has length {}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= n {
                    return Err(GroupError::NotAGroup(format!(
                        "entry {x} out of range in row {i}"
                    )));
                }
                flat.push(x as u16);
            }
        }
        let identity = (0..n)
            .find(|&e| {
                (0..n).all(|x| flat[e * n + x] as usize == x && flat[x * n + e] as usize == x)
            })
            .ok_or_else(|| GroupError::NotAGroup("no identity element".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| flat[x * n + y] as usize == identity)
                .ok_or_else(|| GroupError::NotAGroup(format!("element {x} has no inverse")))?;
            if flat[y * n + x] as usize != identity {
                return Err(GroupError::NotAGroup(format!(
                    "left and right inverse of {x} differ"
                )));
            }
            inverse[x] = y;
        }
        check_associative(&flat, n)?;
        if generators.iter().any(|&g| g >= n) {
            return Err(GroupError::NotAGroup("generator index out of range".into()));
        }
        let g = Self::assemble(flat, n, identity, inverse, generators, labels);
        let reached = g.closure(&g.0.generators);
        if reached.len() != n {
            return Err(GroupError::NotAGroup(format!(
                "generators span {} of {n} elements",
                reached.len()
            )));
        }
        Ok(g)
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Self> {
        if spec.order != spec.table.len() {
            return Err(GroupError::NotAGroup("order does not match table".into()));
        }
        Self::from_table(
            spec.table.clone(),
            spec.generators.clone(),
            spec.labels.clone(),
        )
    }

    pub fn spec(&self) -> GroupSpec {
        let n = self.order();
        GroupSpec {
            order: n,
            table: (0..n)
                .map(|a| (0..n).map(|b| self.mul(a, b)).collect())
                .collect(),
            generators: self.0.generators.clone(),
            labels: self.0.labels.clone(),
        }
    }

    fn assemble(
        table: Vec<u16>,
        n: usize,
        identity: usize,
        inverse: Vec<usize>,
        generators: Vec<usize>,
        labels: Vec<String>,
    ) -> Self {
        let mut orders = vec![0u64; n];
        for x in 0..n {
            let mut y = x;
            let mut k = 1;
            while y != identity {
                y = table[y * n + x] as usize;
                k += 1;
            }
            orders[x] = k;
        }
        FiniteGroup(Arc::new(GroupData {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            n,
            table,
            identity,
            inverse,
            generators,
            labels,
            orders,
            classes: OnceLock::new(),
            regular: Mutex::new(HashMap::new()),
        }))
    }

    /// Close a set of generators under a concrete associative operation.
    /// Returns the group and its elements; index 0 is the identity.
    pub fn from_generators<T, M, L>(
        gens: &[T],
        identity: T,
        mul: M,
        label: L,
    ) -> Result<(Self, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        M: Fn(&T, &T) -> T,
        L: Fn(&T) -> String,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in gens {
                let y = mul(&elems[i], s);
                if !index.contains_key(&y) {
                    if elems.len() == MAX_GROUP_ORDER {
                        return Err(GroupError::TooLarge(MAX_GROUP_ORDER + 1));
                    }
                    index.insert(y.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(y);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let c = mul(&elems[a], &elems[b]);
                let &k = index.get(&c).ok_or_else(|| {
                    GroupError::NotAGroup("operation is not closed on the generated set".into())
                })?;
                table[a * n + b] = k as u16;
            }
        }
        check_associative(&table, n)?;
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a * n + b] == 0)
                .ok_or_else(|| GroupError::NotAGroup("missing inverse".into()))?;
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        let labels = elems.iter().map(&label).collect();
        Ok((
            Self::assemble(table, n, 0, inverse, generators, labels),
            elems,
        ))
    }

    /// `Z/n` with generator 1; element `k` is labelled by `k`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(GroupError::NotAGroup("cyclic group of order 0".into()));
        }
        let (g, _) =
            Self::from_generators(&[1 % n], 0usize, |a, b| (a + b) % n, |a| a.to_string())?;
        Ok(g)
    }

    /// `(Z/p)^k` with the standard basis as generators.
    pub fn elementary_abelian(p: usize, k: usize) -> Result<Self> {
        let gens: Vec<Vec<usize>> = (0..k)
            .map(|i| {
                let mut v = vec![0; k];
                v[i] = 1;
                v
            })
            .collect();
        let (g, _) = Self::from_generators(
            &gens,
            vec![0; k],
            |a, b| a.iter().zip(b).map(|(x, y)| (x + y) % p).collect(),
            |a| format!("{a:?}"),
        )?;
        Ok(g)
    }

    /// `Z/n ⋊ Z/m` with the generator of `Z/m` acting as multiplication by `u`.
    pub fn semidirect_cyclic(n: usize, m: usize, u: usize) -> Result<Self> {
        if exact_algebra::arith::pow_mod(u as u64, m as u64, n as u64) != 1 % n as u64
            || gcd(u as u64, n as u64) != 1
        {
            return Err(GroupError::NotAGroup(format!(
                "{u} does not define an action of Z/{m} on Z/{n}"
            )));
        }
        let powu: Vec<usize> = (0..m)
            .map(|k| exact_algebra::arith::pow_mod(u as u64, k as u64, n as u64) as usize)
            .collect();
        let (g, _) = Self::from_generators(
            &[(1 % n, 0), (0, 1 % m)],
            (0usize, 0usize),
            |&(a1, b1), &(a2, b2)| ((a1 + powu[b1] * a2) % n, (b1 + b2) % m),
            |&(a, b)| format!("({a},{b})"),
        )?;
        Ok(g)
    }

    /// Subgroup of the affine group `x ↦ a·x + b` of `F_q` generated by the
    /// given pairs `(a, b)`. Returns the group and the pair of each element.
    pub fn affine(field: &GaloisField, maps: &[(Fe, Fe)]) -> Result<(Self, Vec<(Fe, Fe)>)> {
        if maps.iter().any(|&(a, _)| a == 0) {
            return Err(GroupError::NotAGroup("affine map with a = 0".into()));
        }
        Self::from_generators(
            maps,
            (1, 0),
            |&(a1, b1), &(a2, b2)| (field.mul(a1, a2), field.add(field.mul(a1, b2), b1)),
            |&(a, b)| format!("({a},{b})"),
        )
    }

    /// The full group `F_q ⋊ μ_e` for `e | q - 1`.
    pub fn affine_full(field: &GaloisField, e: u64) -> Result<(Self, Vec<(Fe, Fe)>)> {
        let q = field.order() as u64;
        if e == 0 || (q - 1) % e != 0 {
            return Err(GroupError::NotAGroup(format!(
                "{e} does not divide {}",
                q - 1
            )));
        }
        let zeta = field.exp(((q - 1) / e) as i64);
        let mut maps = vec![(zeta, 0)];
        for i in 0..field.degree() {
            let mut d = vec![0u32; field.degree() as usize];
            d[i as usize] = 1;
            maps.push((1, field.from_digits(&d)));
        }
        Self::affine(field, &maps)
    }

    /// Permutation group on `0..degree` generated by the given images.
    pub fn permutations(gens: &[Vec<usize>]) -> Result<Self> {
        let d = gens.first().map_or(0, |g| g.len());
        for g in gens {
            let mut seen = vec![false; d];
            if g.len() != d
                || g.iter()
                    .any(|&x| x >= d || std::mem::replace(&mut seen[x], true))
            {
                return Err(GroupError::NotAGroup(format!(
                    "{g:?} is not a permutation of 0..{d}"
                )));
            }
        }
        let (g, _) = Self::from_generators(
            gens,
            (0..d).collect::<Vec<_>>(),
            |a, b| b.iter().map(|&x| a[x]).collect(),
            |a| format!("{a:?}"),
        )?;
        Ok(g)
    }

    /// The symmetric group on three letters.
    pub fn s3() -> Self {
        Self::permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).expect("S3 is a group")
    }

    pub fn order(&self) -> usize {
        self.0.n
    }
    pub fn identity(&self) -> usize {
        self.0.identity
    }
    pub fn generators(&self) -> &[usize] {
        &self.0.generators
    }
    pub fn label(&self, g: usize) -> &str {
        &self.0.labels[g]
    }
    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }
    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.0.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.table[a * self.0.n + b] as usize
    }
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inverse[a]
    }
    /// `x^-1 g x`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), g), x)
    }
    pub fn pow(&self, a: usize, k: i64) -> usize {
        let ord = self.element_order(a) as i64;
        let e = k.rem_euclid(ord);
        let mut acc = self.identity();
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }
    pub fn element_order(&self, a: usize) -> u64 {
        self.0.orders[a]
    }
    pub fn exponent(&self) -> u64 {
        self.0.orders.iter().fold(1, |acc, &o| lcm(acc, o))
    }
    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity()] = true;
        let mut out = vec![self.identity()];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn classes(&self) -> Arc<ClassData> {
        self.0
            .classes
            .get_or_init(|| {
                let n = self.order();
                let mut class_of = vec![usize::MAX; n];
                let mut members: Vec<Vec<usize>> = Vec::new();
                for g in 0..n {
                    if class_of[g] != usize::MAX {
                        continue;
                    }
                    let mut cls: Vec<usize> = (0..n).map(|x| self.conjugate(g, x)).collect();
                    cls.sort_unstable();
                    cls.dedup();
                    members.push(cls);
                    let k = members.len() - 1;
                    for &h in &members[k] {
                        class_of[h] = k;
                    }
                }
                let mut order: Vec<usize> = (0..members.len()).collect();
                order.sort_by_key(|&k| (self.element_order(members[k][0]), members[k][0]));
                let members: Vec<Vec<usize>> = order.iter().map(|&k| members[k].clone()).collect();
                let mut class_of = vec![0; n];
                for (k, m) in members.iter().enumerate() {
                    for &h in m {
                        class_of[h] = k;
                    }
                }
                Arc::new(ClassData {
                    reps: members.iter().map(|m| m[0]).collect(),
                    class_of,
                    members,
                })
            })
            .clone()
    }

    /// Conjugacy classes of elements of order prime to `p`.
    pub fn regular_classes(&self, p: u32) -> Arc<RegularClasses> {
        if let Some(r) = self.0.regular.lock().unwrap().get(&p) {
            return r.clone();
        }
        let cd = self.classes();
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let mut class_of = vec![None; self.order()];
        let mut conductor = 1;
        for m in &cd.members {
            let ord = self.element_order(m[0]);
            if ord % p as u64 == 0 {
                continue;
            }
            conductor = lcm(conductor, ord);
            for &h in m {
                class_of[h] = Some(reps.len());
            }
            reps.push(m[0]);
            sizes.push(m.len());
        }
        let r = Arc::new(RegularClasses {
            p,
            reps,
            sizes,
            class_of,
            conductor,
        });
        self.0.regular.lock().unwrap().insert(p, r.clone());
        r
    }

    /// Representatives of the p-regular conjugacy classes.
    pub fn p_regular_classes(&self, p: u32) -> Vec<usize> {
        self.regular_classes(p).reps.clone()
    }

    pub fn is_p_regular(&self, g: usize, p: u32) -> bool {
        self.element_order(g) % p as u64 != 0
    }

    /// Elements of p-power order.
    pub fn p_elements(&self, p: u32) -> Vec<usize> {
        self.elements()
            .filter(|&g| {
                exact_algebra::arith::split_prime_power(self.element_order(g), p as u64).1 == 1
            })
            .collect()
    }
}

fn check_associative(table: &[u16], n: usize) -> Result<()> {
    let m = |a: usize, b: usize| table[a * n + b] as usize;
    let check = |a: usize, b: usize, c: usize| -> Result<()> {
        if m(m(a, b), c) != m(a, m(b, c)) {
            Err(GroupError::NotAGroup(format!(
                "({a}*{b})*{c} != {a}*({b}*{c})"
            )))
        } else {
            Ok(())
        }
    };
    if n <= FULL_CHECK_ORDER {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    check(a, b, c)?;
                }
            }
        }
    } else {
        // fixed sample: all pairs against a stride of third elements
        let stride = (n / 16).max(1);
        for a in 0..n {
            for b in 0..n {
                let mut c = (a + b) % stride;
                while c < n {
                    check(a, b, c)?;
                    c += stride;
                }
            }
        }
    }
    Ok(())
}
