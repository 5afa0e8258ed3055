//! Subgroups carried together with a standalone copy of the subgroup.

use std::fmt;

use exact_algebra::arith::split_prime_power;

use crate::error::{GroupError, Result};
use crate::group::FiniteGroup;

#[derive(Clone)]
pub struct Subgroup {
    parent: FiniteGroup,
    elements: Vec<usize>,
    group: FiniteGroup,
    local_of: Vec<Option<usize>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.elements == other.elements
    }
}
impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subgroup(order {} of {})",
            self.elements.len(),
            self.parent.order()
        )
    }
}

impl Subgroup {
    /// Validate an element subset and build the subgroup.
    pub fn new(parent: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if elements.iter().any(|&g| g >= parent.order()) {
            return Err(GroupError::NotASubgroup(
                "element index out of range".into(),
            ));
        }
        let mut local_of = vec![None; parent.order()];
        for (i, &g) in elements.iter().enumerate() {
            local_of[g] = Some(i);
        }
        if local_of[parent.identity()].is_none() {
            return Err(GroupError::NotASubgroup("missing identity".into()));
        }
        for &a in &elements {
            if local_of[parent.inv(a)].is_none() {
                return Err(GroupError::NotASubgroup(format!(
                    "not closed under inverse at {}",
                    parent.label(a)
                )));
            }
            for &b in &elements {
                if local_of[parent.mul(a, b)].is_none() {
                    return Err(GroupError::NotASubgroup(format!(
                        "not closed under multiplication at {} * {}",
                        parent.label(a),
                        parent.label(b)
                    )));
                }
            }
        }
        let n = elements.len();
        let table: Vec<Vec<usize>> = elements
            .iter()
            .map(|&a| {
                elements
                    .iter()
                    .map(|&b| local_of[parent.mul(a, b)].unwrap())
                    .collect()
            })
            .collect();
        // greedy generating set
        let mut gens = Vec::new();
        let mut span = vec![parent.identity()];
        for &g in &elements {
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = parent.closure(&gens);
            }
        }
        let local_gens = gens.iter().map(|&g| local_of[g].unwrap()).collect();
        let labels = elements
            .iter()
            .map(|&g| parent.label(g).to_string())
            .collect();
        let group = FiniteGroup::from_table(table, local_gens, labels)?;
        debug_assert_eq!(group.order(), n);
        Ok(Subgroup {
            parent: parent.clone(),
            elements,
            group,
            local_of,
        })
    }

    pub fn generated(parent: &FiniteGroup, gens: &[usize]) -> Result<Self> {
        Self::new(parent, &parent.closure(gens))
    }

    pub fn whole(parent: &FiniteGroup) -> Self {
        Self::new(parent, &parent.elements().collect::<Vec<_>>()).expect("whole group")
    }

    pub fn trivial(parent: &FiniteGroup) -> Self {
        Self::new(parent, &[parent.identity()]).expect("trivial subgroup")
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }
    /// The subgroup as a group in its own right; local index `i` is the
    /// parent element `elements()[i]`.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }
    pub fn contains(&self, g: usize) -> bool {
        self.local_of[g].is_some()
    }
    pub fn to_parent(&self, local: usize) -> usize {
        self.elements[local]
    }
    pub fn to_local(&self, g: usize) -> Option<usize> {
        self.local_of[g]
    }

    /// `x H x^-1`.
    pub fn conjugate_by(&self, x: usize) -> Self {
        let g = &self.parent;
        let xi = g.inv(x);
        let elems: Vec<usize> = self
            .elements
            .iter()
            .map(|&h| g.mul(g.mul(x, h), xi))
            .collect();
        Self::new(g, &elems).expect("conjugate of a subgroup")
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        g.generators().iter().all(|&x| {
            self.elements
                .iter()
                .all(|&h| self.contains(g.conjugate(h, x)))
        })
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.elements.iter().all(|&h| other.contains(h))
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Self> {
        if self.parent != other.parent {
            return Err(GroupError::GroupMismatch);
        }
        let elems: Vec<usize> = self
            .elements
            .iter()
            .copied()
            .filter(|&h| other.contains(h))
            .collect();
        Self::new(&self.parent, &elems)
    }

    /// Normalizer in the parent group.
    pub fn normalizer(&self) -> Self {
        let g = &self.parent;
        let elems: Vec<usize> = g
            .elements()
            .filter(|&x| {
                self.elements
                    .iter()
                    .all(|&h| self.contains(g.conjugate(h, x)))
            })
            .collect();
        Self::new(g, &elems).expect("normalizer")
    }

    /// Left coset representatives `t_i` with `G = ⊔ t_i H`, smallest index first.
    pub fn left_transversal(&self) -> Vec<usize> {
        let g = &self.parent;
        let mut covered = vec![false; g.order()];
        let mut reps = Vec::new();
        for t in g.elements() {
            if covered[t] {
                continue;
            }
            reps.push(t);
            for &h in &self.elements {
                covered[g.mul(t, h)] = true;
            }
        }
        reps
    }

    pub fn is_p_group(&self, p: u32) -> bool {
        split_prime_power(self.order() as u64, p as u64).1 == 1
    }
}

impl FiniteGroup {
    /// A Sylow p-subgroup, grown one factor of `p` at a time inside normalizers.
    pub fn sylow(&self, p: u32) -> Subgroup {
        let target = {
            let (v, _) = split_prime_power(self.order() as u64, p as u64);
            (p as usize).pow(v)
        };
        let mut s = Subgroup::trivial(self);
        while s.order() < target {
            let norm = s.normalizer();
            let mut grown = None;
            for &x in norm.elements() {
                if s.contains(x) {
                    continue;
                }
                // order of x modulo s
                let mut k = 1;
                let mut y = x;
                while !s.contains(y) {
                    y = self.mul(y, x);
                    k += 1;
                }
                if k % p as u64 == 0 {
                    let h = self.pow(x, (k / p as u64) as i64);
                    let mut gens: Vec<usize> = s.elements().to_vec();
                    gens.push(h);
                    grown = Some(Subgroup::generated(self, &gens).expect("p-subgroup"));
                    break;
                }
            }
            s = grown.expect("a p-subgroup that is not Sylow grows inside its normalizer");
        }
        s
    }

    /// All cyclic subgroups of the given order, in order of smallest generator.
    pub fn cyclic_subgroups_of_order(&self, order: u64) -> Vec<Subgroup> {
        let mut out: Vec<Subgroup> = Vec::new();
        for g in self.elements() {
            if self.element_order(g) == order {
                let h = Subgroup::generated(self, &[g]).expect("cyclic subgroup");
                if !out.contains(&h) {
                    out.push(h);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sylow_orders() {
        let s3 = FiniteGroup::s3();
        assert_eq!(s3.sylow(3).order(), 3);
        assert!(s3.sylow(3).is_normal());
        assert_eq!(s3.sylow(2).order(), 2);
        assert!(!s3.sylow(2).is_normal());
        let c12 = FiniteGroup::cyclic(12).unwrap();
        assert_eq!(c12.sylow(2).order(), 4);
        assert_eq!(c12.sylow(5).order(), 1);
        let a = FiniteGroup::semidirect_cyclic(7, 3, 2).unwrap();
        assert_eq!(a.sylow(7).order(), 7);
        assert_eq!(a.sylow(3).order(), 3);
    }

    #[test]
    fn rejects_non_subgroups() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        assert!(Subgroup::new(&c4, &[0, 1]).is_err());
        assert!(Subgroup::new(&c4, &[1, 3]).is_err());
        assert_eq!(Subgroup::new(&c4, &[0, 2]).unwrap().order(), 2);
    }

    #[test]
    fn transversal_and_conjugation() {
        let s3 = FiniteGroup::s3();
        let c2 = s3.sylow(2);
        assert_eq!(c2.left_transversal().len(), 3);
        let conjugates: Vec<Subgroup> = s3.elements().map(|x| c2.conjugate_by(x)).collect();
        let mut distinct: Vec<Subgroup> = Vec::new();
        for c in conjugates {
            if !distinct.contains(&c) {
                distinct.push(c);
            }
        }
        assert_eq!(distinct.len(), 3);
        assert_eq!(s3.cyclic_subgroups_of_order(2).len(), 3);
    }
}
