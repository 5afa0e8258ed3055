//! Class functions on p-regular classes and K0 classes of group algebras.

use std::fmt;

use exact_algebra::{BigInt, BigRational, CycNumber};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{GroupError, Result};
use crate::group::FiniteGroup;
use crate::subgroup::Subgroup;

/// A function on the p-regular conjugacy classes of a group with values in
/// `Q(zeta_m)`, `m` the exponent of the p-regular part.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassFunction {
    group: FiniteGroup,
    p: u32,
    values: Vec<CycNumber>,
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cls = self.group.regular_classes(self.p);
        let parts: Vec<String> = cls
            .reps
            .iter()
            .zip(&self.values)
            .map(|(&r, v)| format!("{}: {}", self.group.label(r), v))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Serialized form of a class function.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClassFunctionSpec {
    pub group_order: usize,
    pub p: u32,
    pub class_representatives: Vec<String>,
    pub values: Vec<CycNumber>,
}

impl ClassFunction {
    pub fn new(group: &FiniteGroup, p: u32, values: Vec<CycNumber>) -> Result<Self> {
        let cls = group.regular_classes(p);
        if values.len() != cls.reps.len() {
            return Err(GroupError::Algebra(
                exact_algebra::AlgebraError::DimensionMismatch(format!(
                    "{} values for {} p-regular classes",
                    values.len(),
                    cls.reps.len()
                )),
            ));
        }
        let m = cls.conductor;
        let values = values
            .into_iter()
            .map(|v| {
                v.to_conductor(m).ok_or_else(|| {
                    GroupError::Algebra(exact_algebra::AlgebraError::FieldMismatch(format!(
                        "value of conductor {} outside Q(zeta_{m})",
                        v.conductor()
                    )))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassFunction {
            group: group.clone(),
            p,
            values,
        })
    }

    /// Build from a function on p-regular elements, evaluated at class representatives.
    pub fn from_fn(group: &FiniteGroup, p: u32, f: impl Fn(usize) -> CycNumber) -> Result<Self> {
        let reps = group.regular_classes(p).reps.clone();
        Self::new(group, p, reps.into_iter().map(f).collect())
    }

    pub fn zero(group: &FiniteGroup, p: u32) -> Self {
        let cls = group.regular_classes(p);
        ClassFunction {
            group: group.clone(),
            p,
            values: vec![CycNumber::zero(cls.conductor); cls.reps.len()],
        }
    }

    pub fn constant(group: &FiniteGroup, p: u32, c: i64) -> Self {
        let cls = group.regular_classes(p);
        ClassFunction {
            group: group.clone(),
            p,
            values: vec![CycNumber::from_int(cls.conductor, c); cls.reps.len()],
        }
    }

    /// Brauer character of the regular module: `|G|` at 1 and 0 elsewhere.
    pub fn regular(group: &FiniteGroup, p: u32) -> Self {
        let mut f = Self::zero(group, p);
        let m = f.conductor();
        f.values[0] = CycNumber::from_int(m, group.order() as i64);
        f
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn values(&self) -> &[CycNumber] {
        &self.values
    }
    pub fn conductor(&self) -> u64 {
        self.group.regular_classes(self.p).conductor
    }

    /// Value at a p-regular element.
    pub fn at(&self, g: usize) -> Option<&CycNumber> {
        self.group.regular_classes(self.p).class_of[g].map(|k| &self.values[k])
    }

    pub fn at_identity(&self) -> &CycNumber {
        &self.values[0]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    fn check_compatible(&self, o: &Self) -> Result<()> {
        if self.group != o.group {
            return Err(GroupError::GroupMismatch);
        }
        if self.p != o.p {
            return Err(GroupError::CharacteristicMismatch(self.p, o.p));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        Ok(ClassFunction {
            group: self.group.clone(),
            p: self.p,
            values: self
                .values
                .iter()
                .zip(&o.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        Ok(ClassFunction {
            group: self.group.clone(),
            p: self.p,
            values: self
                .values
                .iter()
                .zip(&o.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        ClassFunction {
            group: self.group.clone(),
            p: self.p,
            values: self.values.iter().map(|v| v.scale(r)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    /// Value at `g` replaced by the value at `g^-1`.
    pub fn dual(&self) -> Self {
        let g = &self.group;
        let cls = g.regular_classes(self.p);
        let values = cls
            .reps
            .iter()
            .map(|&r| self.at(g.inv(r)).unwrap().clone())
            .collect();
        ClassFunction {
            group: g.clone(),
            p: self.p,
            values,
        }
    }

    /// Complex conjugate values, equal to the dual for Brauer characters.
    pub fn conj(&self) -> Self {
        ClassFunction {
            group: self.group.clone(),
            p: self.p,
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    /// Restriction to a subgroup, as a class function on the standalone subgroup.
    pub fn restrict(&self, h: &Subgroup) -> Result<Self> {
        if h.parent() != &self.group {
            return Err(GroupError::GroupMismatch);
        }
        let hg = h.group();
        ClassFunction::from_fn(hg, self.p, |r| {
            self.at(h.to_parent(r)).expect("p-regular").clone()
        })
    }

    /// Induction from a subgroup: `(1/|H|) Σ_{x∈G, x⁻¹gx∈H} φ(x⁻¹gx)`.
    pub fn induce(h: &Subgroup, phi: &ClassFunction) -> Result<Self> {
        if h.group() != &phi.group {
            return Err(GroupError::GroupMismatch);
        }
        let g = h.parent();
        let inv_h = BigRational::new(BigInt::one(), BigInt::from(h.order()));
        ClassFunction::from_fn(g, phi.p, |r| {
            let mut acc = CycNumber::zero(1);
            for x in g.elements() {
                let y = g.conjugate(r, x);
                if let Some(loc) = h.to_local(y) {
                    acc = &acc + phi.at(loc).expect("p-regular");
                }
            }
            acc.scale(&inv_h)
        })
    }

    /// `(1/|G|) Σ_{g p-regular} a(g) b(g^-1)`.
    pub fn inner(&self, o: &Self) -> Result<CycNumber> {
        self.check_compatible(o)?;
        let g = &self.group;
        let cls = g.regular_classes(self.p);
        let mut acc = CycNumber::zero(cls.conductor);
        for (k, &r) in cls.reps.iter().enumerate() {
            let term = &self.values[k] * o.at(g.inv(r)).unwrap();
            acc = &acc + &term.scale_int(cls.sizes[k] as i64);
        }
        Ok(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(g.order()))))
    }

    /// Agreement at every p-regular class other than the identity.
    pub fn agrees_off_identity(&self, o: &Self) -> Result<bool> {
        self.check_compatible(o)?;
        Ok(self.values[1..] == o.values[1..])
    }

    pub fn spec(&self) -> ClassFunctionSpec {
        let cls = self.group.regular_classes(self.p);
        ClassFunctionSpec {
            group_order: self.group.order(),
            p: self.p,
            class_representatives: cls
                .reps
                .iter()
                .map(|&r| self.group.label(r).to_string())
                .collect(),
            values: self.values.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    FromProjectiveModule,
    FormalCombination,
}

/// An element of `K0(kG) ⊗ Q`, identified with its Brauer character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Class {
    pub function: ClassFunction,
    pub provenance: Provenance,
}

impl K0Class {
    pub fn formal(function: ClassFunction) -> Self {
        K0Class {
            function,
            provenance: Provenance::FormalCombination,
        }
    }

    pub fn of_projective(function: ClassFunction) -> Self {
        K0Class {
            function,
            provenance: Provenance::FromProjectiveModule,
        }
    }

    /// The class `[kG]`.
    pub fn regular(group: &FiniteGroup, p: u32) -> Self {
        K0Class::of_projective(ClassFunction::regular(group, p))
    }

    pub fn zero(group: &FiniteGroup, p: u32) -> Self {
        K0Class::formal(ClassFunction::zero(group, p))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Ok(K0Class::formal(self.function.add(&o.function)?))
    }
    pub fn sub(&self, o: &Self) -> Result<Self> {
        Ok(K0Class::formal(self.function.sub(&o.function)?))
    }
    pub fn scale(&self, r: &BigRational) -> Self {
        K0Class::formal(self.function.scale(r))
    }
    pub fn dual(&self) -> Self {
        K0Class {
            function: self.function.dual(),
            provenance: self.provenance,
        }
    }
    pub fn restrict(&self, h: &Subgroup) -> Result<Self> {
        Ok(K0Class {
            function: self.function.restrict(h)?,
            provenance: self.provenance,
        })
    }
    pub fn induce(h: &Subgroup, a: &K0Class) -> Result<Self> {
        Ok(K0Class {
            function: ClassFunction::induce(h, &a.function)?,
            provenance: a.provenance,
        })
    }

    /// Dimension, rational in general.
    pub fn dimension(&self) -> BigRational {
        self.function
            .at_identity()
            .to_rational()
            .expect("value at identity is rational")
    }
}

/// Decide whether `a - b` is an integer multiple of `[kG]`. Returns the
/// multiple `c = (a(1) - b(1)) / |G|` when it is, `None` otherwise.
pub fn stable_equal(a: &K0Class, b: &K0Class) -> Result<Option<BigInt>> {
    if !a.function.agrees_off_identity(&b.function)? {
        return Ok(None);
    }
    let diff = a.dimension() - b.dimension();
    let c = diff / BigRational::from_integer(BigInt::from(a.function.group().order()));
    if c.is_integer() {
        Ok(Some(c.to_integer()))
    } else {
        Ok(None)
    }
}

/// Multiplicities of the projective indecomposables in a class on a group
/// `P ⋊ C` with `P` a normal Sylow p-subgroup and `C` cyclic. The simple
/// modules are inflated from `C`, so the multiplicity of the cover of the
/// `i`-th character of `C` is the pairing with that inflated character.
/// Characters of `C` are indexed by `i` with `c0 ↦ zeta^i` for the returned
/// generator `c0`.
pub fn pim_multiplicities(
    class: &K0Class,
    complement: &Subgroup,
) -> Result<(usize, Vec<BigRational>)> {
    let g = class.function.group();
    let p = class.function.characteristic();
    if complement.parent() != g {
        return Err(GroupError::GroupMismatch);
    }
    let sylow = g.sylow(p);
    if !sylow.is_normal()
        || sylow.order() * complement.order() != g.order()
        || sylow.intersection(complement)?.order() != 1
    {
        return Err(GroupError::Unsupported(
            "group is not a semidirect product of its Sylow subgroup by the complement".into(),
        ));
    }
    let e = complement.order() as u64;
    let c0 = *complement
        .elements()
        .iter()
        .find(|&&c| g.element_order(c) == e)
        .ok_or_else(|| GroupError::Unsupported("complement is not cyclic".into()))?;
    // discrete log in C of the C-component of each element
    let mut c_log = vec![0i64; g.order()];
    let mut c = g.identity();
    for k in 0..e as i64 {
        for &s in sylow.elements() {
            c_log[g.mul(s, c)] = k;
        }
        c = g.mul(c, c0);
    }
    let m = class.function.conductor();
    let mut out = Vec::with_capacity(e as usize);
    for i in 0..e as i64 {
        let simple = ClassFunction::from_fn(g, p, |r| {
            CycNumber::zeta_power(e, i * c_log[r]).coerce(exact_algebra::arith::lcm(e, m))
        })?;
        let mult = class.function.inner(&simple)?;
        let r = mult.to_rational().ok_or_else(|| {
            GroupError::BadModule(format!("multiplicity {mult} of simple {i} is not rational"))
        })?;
        out.push(r);
    }
    Ok((c0, out))
}

/// Rational numbers that happen to be integers.
pub fn as_integer(r: &BigRational) -> Option<BigInt> {
    if r.is_integer() {
        Some(r.to_integer())
    } else {
        None
    }
}
