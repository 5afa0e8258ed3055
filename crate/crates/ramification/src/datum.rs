//! Inertia data at one ramified place: `I_w = P_w ⋊ C_w` and the cotangent
//! character `theta_w`.

use exact_algebra::arith::split_prime_power;
use exact_algebra::{Fe, GaloisField};
use group_rep::{FiniteGroup, Subgroup};
use serde::{Deserialize, Serialize};

use crate::error::{RamificationError, Result};

#[derive(Clone, Debug)]
pub struct LocalDatum {
    group: FiniteGroup,
    inertia: Subgroup,
    wild: Subgroup,
    tame: Subgroup,
    /// `k_w`, the field holding the values of theta.
    residue_field: GaloisField,
    /// Generator `c0` of `C_w` and `theta(c0)`.
    theta_generator: usize,
    theta_value: Fe,
    /// For each element of `I_w`, the exponent `k` with `x P_w = c0^k P_w`.
    tame_log: Vec<Option<u64>>,
    filtration: Option<Vec<usize>>,
}

/// Serialized form; element indices refer to the ambient group.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct LocalDatumSpec {
    pub inertia: Vec<usize>,
    pub wild: Vec<usize>,
    pub tame: Vec<usize>,
    pub theta_generator: usize,
    /// Base-p digits of `theta(c0)` in the tower field of degree `residue_degree`.
    pub theta_value: Vec<u32>,
    pub residue_degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration: Option<Vec<usize>>,
}

impl LocalDatum {
    /// Validate the structure `I = P ⋊ C` with `P` the normal Sylow p-subgroup,
    /// `C` cyclic generated by `theta_generator`, and `theta` faithful on `C`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        group: &FiniteGroup,
        inertia: &[usize],
        wild: &[usize],
        tame: &[usize],
        residue_field: &GaloisField,
        theta_generator: usize,
        theta_value: Fe,
        filtration: Option<Vec<usize>>,
    ) -> Result<Self> {
        let p = residue_field.characteristic();
        let inertia = Subgroup::new(group, inertia)?;
        let wild = Subgroup::new(group, wild)?;
        let tame = Subgroup::new(group, tame)?;
        let bad = |m: &str| Err(RamificationError::InvalidDatum(m.into()));
        if !wild.is_subgroup_of(&inertia) || !tame.is_subgroup_of(&inertia) {
            return bad("P and C must lie in I");
        }
        if !wild.is_p_group(p) || (inertia.order() / wild.order()) % p as usize == 0 {
            return bad("P must be a Sylow p-subgroup of I");
        }
        if inertia.elements().iter().any(|&x| {
            wild.elements()
                .iter()
                .any(|&s| !wild.contains(group.conjugate(s, x)))
        }) {
            return bad("P must be normal in I");
        }
        if wild.order() * tame.order() != inertia.order() || wild.intersection(&tame)?.order() != 1
        {
            return bad("I must be the semidirect product of P and C");
        }
        let e = tame.order() as u64;
        if !tame.contains(theta_generator) || group.element_order(theta_generator) != e {
            return bad("theta generator must generate C");
        }
        if theta_value >= residue_field.order() || theta_value == 0 {
            return bad("theta value must be a nonzero element of k_w");
        }
        if residue_field.element_order(theta_value)? != e {
            return bad("theta must be injective on C");
        }
        let mut tame_log = vec![None; group.order()];
        let mut c = group.identity();
        for k in 0..e {
            for &s in wild.elements() {
                tame_log[group.mul(s, c)] = Some(k);
            }
            c = group.mul(c, theta_generator);
        }
        if let Some(f) = &filtration {
            check_filtration(f, inertia.order(), wild.order())?;
        }
        Ok(LocalDatum {
            group: group.clone(),
            inertia,
            wild,
            tame,
            residue_field: residue_field.clone(),
            theta_generator,
            theta_value,
            tame_log,
            filtration,
        })
    }

    pub fn from_spec(group: &FiniteGroup, p: u32, spec: &LocalDatumSpec) -> Result<Self> {
        let field = GaloisField::conway(p, spec.residue_degree)?;
        if spec.theta_value.len() > spec.residue_degree as usize
            || spec.theta_value.iter().any(|&d| d >= p)
        {
            return Err(RamificationError::InvalidDatum(
                "theta value digits out of range".into(),
            ));
        }
        let value = field.from_digits(&spec.theta_value);
        if [&spec.inertia, &spec.wild, &spec.tame]
            .iter()
            .any(|v| v.iter().any(|&x| x >= group.order()))
            || spec.theta_generator >= group.order()
        {
            return Err(RamificationError::InvalidDatum(
                "element index out of range".into(),
            ));
        }
        Self::new(
            group,
            &spec.inertia,
            &spec.wild,
            &spec.tame,
            &field,
            spec.theta_generator,
            value,
            spec.filtration.clone(),
        )
    }

    pub fn spec(&self) -> LocalDatumSpec {
        LocalDatumSpec {
            inertia: self.inertia.elements().to_vec(),
            wild: self.wild.elements().to_vec(),
            tame: self.tame.elements().to_vec(),
            theta_generator: self.theta_generator,
            theta_value: self.residue_field.digits(self.theta_value),
            residue_degree: self.residue_field.degree(),
            filtration: self.filtration.clone(),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
    pub fn inertia(&self) -> &Subgroup {
        &self.inertia
    }
    pub fn wild(&self) -> &Subgroup {
        &self.wild
    }
    pub fn tame(&self) -> &Subgroup {
        &self.tame
    }
    pub fn residue_field(&self) -> &GaloisField {
        &self.residue_field
    }
    pub fn characteristic(&self) -> u32 {
        self.residue_field.characteristic()
    }
    /// `f_w = [k_w : F_p]`.
    pub fn residue_degree(&self) -> u32 {
        self.residue_field.degree()
    }
    pub fn filtration(&self) -> Option<&[usize]> {
        self.filtration.as_deref()
    }
    pub fn theta_generator(&self) -> usize {
        self.theta_generator
    }
    pub fn theta_value(&self) -> Fe {
        self.theta_value
    }
    /// `|I_w|`.
    pub fn inertia_order(&self) -> usize {
        self.inertia.order()
    }
    /// `|P_w|`.
    pub fn wild_order(&self) -> usize {
        self.wild.order()
    }
    /// `e = |I_w / P_w| = |C_w|`.
    pub fn tame_order(&self) -> usize {
        self.tame.order()
    }
    pub fn is_tame(&self) -> bool {
        self.wild.order() == 1
    }

    /// `theta` on any element of `I_w`, trivial on `P_w`.
    pub fn theta(&self, x: usize) -> Option<Fe> {
        self.tame_log[x].map(|k| self.residue_field.pow(self.theta_value, k as i64))
    }

    /// Exponent `k` with `x P = c0^k P`.
    pub fn tame_log(&self, x: usize) -> Option<u64> {
        self.tame_log[x]
    }

    /// The same datum with another complement of `P_w` in `I_w`; theta is
    /// transported through `I_w / P_w`.
    pub fn with_complement(&self, complement: &Subgroup) -> Result<Self> {
        let e = self.tame_order() as u64;
        let gen = *complement
            .elements()
            .iter()
            .find(|&&c| self.group.element_order(c) == e)
            .ok_or_else(|| {
                RamificationError::InvalidDatum("complement is not cyclic of order e".into())
            })?;
        let value = self
            .theta(gen)
            .ok_or_else(|| RamificationError::InvalidDatum("complement outside I".into()))?;
        Self::new(
            &self.group,
            self.inertia.elements(),
            self.wild.elements(),
            complement.elements(),
            &self.residue_field,
            gen,
            value,
            self.filtration.clone(),
        )
    }

    /// All complements of `P_w` in `I_w`; they are cyclic of order `e`.
    pub fn all_complements(&self) -> Vec<Subgroup> {
        let e = self.tame_order() as u64;
        let mut out: Vec<Subgroup> = Vec::new();
        for &x in self.inertia.elements() {
            if self.group.element_order(x) != e {
                continue;
            }
            let c = Subgroup::generated(&self.group, &[x]).expect("cyclic subgroup");
            if c.intersection(&self.wild)
                .map(|s| s.order() == 1)
                .unwrap_or(false)
                && !out.contains(&c)
            {
                out.push(c);
            }
        }
        out
    }

    /// The structural shape of weak ramification: `P_w` elementary abelian and
    /// `C_w ∩ g C_w g^-1 = 1` for all `g ∈ P_w \ {1}`.
    pub fn has_weakly_ramified_shape(&self) -> bool {
        let g = &self.group;
        let p = self.characteristic() as u64;
        let elementary = self.wild.group().is_abelian()
            && self
                .wild
                .elements()
                .iter()
                .all(|&s| s == g.identity() || g.element_order(s) == p);
        if !elementary {
            return false;
        }
        self.wild
            .elements()
            .iter()
            .filter(|&&s| s != g.identity())
            .all(|&s| {
                let conj = self.tame.conjugate_by(s);
                conj.intersection(&self.tame)
                    .map(|x| x.order() == 1)
                    .unwrap_or(false)
            })
    }

    /// Whether the stored filtration says the place is weakly ramified.
    pub fn is_weakly_ramified(&self) -> Result<bool> {
        is_weakly_ramified(
            self.filtration
                .as_deref()
                .ok_or(RamificationError::MissingFiltration)?,
        )
    }
}

fn check_filtration(f: &[usize], inertia_order: usize, wild_order: usize) -> Result<()> {
    if f.is_empty() {
        return Err(RamificationError::MissingFiltration);
    }
    if f[0] != inertia_order {
        return Err(RamificationError::BadFiltration(format!(
            "|I_0| = {} but |I| = {inertia_order}",
            f[0]
        )));
    }
    if f.len() > 1 && f[1] != wild_order {
        return Err(RamificationError::BadFiltration(format!(
            "|I_1| = {} but |P| = {wild_order}",
            f[1]
        )));
    }
    if f.windows(2).any(|w| w[1] > w[0] || w[0] % w[1] != 0) {
        return Err(RamificationError::BadFiltration(
            "filtration must be a decreasing chain of subgroups".into(),
        ));
    }
    Ok(())
}

/// Weak ramification: `|I_{w,2}| = 1`. The list starts at `s = 0`; entries
/// after a trivial group may be omitted.
pub fn is_weakly_ramified(filtration: &[usize]) -> Result<bool> {
    if filtration.is_empty() {
        return Err(RamificationError::MissingFiltration);
    }
    if filtration.windows(2).any(|w| w[1] > w[0]) {
        return Err(RamificationError::BadFiltration(
            "filtration must be non-increasing".into(),
        ));
    }
    match filtration.get(2) {
        Some(&i2) => Ok(i2 == 1),
        None if *filtration.last().unwrap() == 1 => Ok(true),
        None => Err(RamificationError::MissingFiltration),
    }
}

/// Whether a group order is a power of `p` (including 1).
pub fn is_p_power(n: usize, p: u32) -> bool {
    split_prime_power(n as u64, p as u64).1 == 1
}
