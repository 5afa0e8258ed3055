//! Characteristic-zero characters `ψ` of `G` and the primes `λ` they are
//! measured at.

use exact_algebra::CycNumber;
use group_rep::{irreducible_characters, FiniteGroup, GroupCharacter};
use serde::{Deserialize, Serialize};

use crate::error::{PsiError, Result};

/// `ψ` as a class function on all conjugacy classes of `G`.
#[derive(Debug, Clone, PartialEq)]
pub struct Psi {
    group: FiniteGroup,
    values: Vec<CycNumber>,
}

/// JSON form: the degree and one value per conjugacy class, in the group's
/// class order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsiSpec {
    pub degree: i64,
    pub values: Vec<CycNumber>,
}

impl Psi {
    pub fn new(group: &FiniteGroup, values: Vec<CycNumber>) -> Result<Self> {
        let classes = group.classes();
        if values.len() != classes.reps.len() {
            return Err(PsiError::InvalidPsi(format!(
                "{} values for {} conjugacy classes",
                values.len(),
                classes.reps.len()
            )));
        }
        for (k, v) in values.iter().enumerate() {
            if !v.norm().is_integer() {
                return Err(PsiError::InvalidPsi(format!(
                    "value {v} at class {k} is not an algebraic integer"
                )));
            }
        }
        if values[0].to_integer().is_none() {
            return Err(PsiError::InvalidPsi(format!(
                "value {} at the identity is not an integer",
                values[0]
            )));
        }
        Ok(Psi {
            group: group.clone(),
            values,
        })
    }

    pub fn from_character(group: &FiniteGroup, ch: &GroupCharacter) -> Result<Self> {
        if ch.values.len() != group.order() {
            return Err(PsiError::InvalidPsi(
                "character has the wrong number of values".into(),
            ));
        }
        let reps = group.classes().reps.clone();
        Self::new(group, reps.iter().map(|&r| ch.values[r].clone()).collect())
    }

    pub fn from_spec(group: &FiniteGroup, spec: &PsiSpec) -> Result<Self> {
        let psi = Self::new(group, spec.values.clone())?;
        if psi.degree() != spec.degree {
            return Err(PsiError::InvalidPsi(format!(
                "declared degree {} but ψ(1) = {}",
                spec.degree,
                psi.degree()
            )));
        }
        Ok(psi)
    }

    pub fn spec(&self) -> PsiSpec {
        PsiSpec {
            degree: self.degree(),
            values: self.values.clone(),
        }
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        let n = group.classes().reps.len();
        Psi {
            group: group.clone(),
            values: vec![CycNumber::one(1); n],
        }
    }

    pub fn regular(group: &FiniteGroup) -> Self {
        let n = group.classes().reps.len();
        let mut values = vec![CycNumber::zero(1); n];
        values[0] = CycNumber::from_int(1, group.order() as i64);
        Psi {
            group: group.clone(),
            values,
        }
    }

    /// All irreducible characters, for the groups `group-rep` can tabulate.
    pub fn irreducibles(group: &FiniteGroup) -> Result<Vec<Self>> {
        irreducible_characters(group)?
            .iter()
            .map(|ch| Self::from_character(group, ch))
            .collect()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
    pub fn values(&self) -> &[CycNumber] {
        &self.values
    }
    pub fn degree(&self) -> i64 {
        self.values[0].to_i64().expect("integral degree")
    }
    /// `ψ(g)`.
    pub fn at(&self, g: usize) -> &CycNumber {
        &self.values[self.group.classes().class_of[g]]
    }

    /// The virtual sum `ψ + φ`.
    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.group != o.group {
            return Err(PsiError::InvalidPsi(
                "characters of different groups".into(),
            ));
        }
        Ok(Psi {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&o.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

/// A prime `λ` of the coefficient field over the rational prime `ℓ`, with
/// ramification index `e_{λ|ℓ} = v_λ(ℓ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaSpec {
    pub ell: u32,
    pub ramification: u32,
}

impl LambdaSpec {
    pub fn new(ell: u32, ramification: u32) -> Result<Self> {
        if ramification == 0 {
            return Err(PsiError::InvalidPsi(
                "ramification index must be at least 1".into(),
            ));
        }
        if ell < 2 || !exact_algebra::arith::is_prime(ell as u64) {
            return Err(PsiError::InvalidPsi(format!("{ell} is not prime")));
        }
        Ok(LambdaSpec { ell, ramification })
    }

    /// `v_λ(n)` for a non-zero integer `n`.
    pub fn valuation(&self, n: u64) -> i64 {
        exact_algebra::arith::valuation(n, self.ell as u64) as i64 * self.ramification as i64
    }
}
