//! Irreducible complex characters of groups `A ⋊ C` with `A` abelian and
//! `C` cyclic, built by the little-group method.

use exact_algebra::{BigInt, BigRational, CycNumber};
use num_traits::One;

use crate::error::{GroupError, Result};
use crate::group::FiniteGroup;
use crate::subgroup::Subgroup;

/// A characteristic-zero character, with values per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCharacter {
    pub values: Vec<CycNumber>,
}

impl GroupCharacter {
    pub fn degree(&self) -> i64 {
        self.values[0].to_i64().expect("degree is an integer")
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v == &CycNumber::one(1))
    }
}

/// The regular character `|G|·δ_1`.
pub fn regular_character(group: &FiniteGroup) -> GroupCharacter {
    let m = group.exponent();
    let values = group
        .elements()
        .map(|g| {
            CycNumber::from_int(
                m,
                if g == group.identity() {
                    group.order() as i64
                } else {
                    0
                },
            )
        })
        .collect();
    GroupCharacter { values }
}

pub fn trivial_character(group: &FiniteGroup) -> GroupCharacter {
    GroupCharacter {
        values: vec![CycNumber::one(group.exponent()); group.order()],
    }
}

/// A decomposition `G = A ⋊ C`.
fn split(group: &FiniteGroup) -> Result<(Subgroup, Subgroup)> {
    if group.is_abelian() {
        return Ok((Subgroup::whole(group), Subgroup::trivial(group)));
    }
    for p in exact_algebra::arith::prime_factors(group.order() as u64) {
        let a = group.sylow(p as u32);
        if !a.is_normal() || !a.group().is_abelian() {
            continue;
        }
        let e = (group.order() / a.order()) as u64;
        for c in group.cyclic_subgroups_of_order(e) {
            if a.intersection(&c)?.order() == 1 {
                return Ok((a, c));
            }
        }
    }
    Err(GroupError::Unsupported(
        "no abelian normal Sylow subgroup with a cyclic complement".into(),
    ))
}

/// Linear characters of an abelian group, as exponent vectors modulo its exponent.
fn abelian_characters(a: &FiniteGroup) -> Vec<Vec<u64>> {
    let e = a.exponent();
    // greedy generating set
    let mut gens = Vec::new();
    let mut span = vec![a.identity()];
    for g in a.elements() {
        if span.binary_search(&g).is_err() {
            gens.push(g);
            span = a.closure(&gens);
        }
    }
    let mut out = Vec::new();
    let mut assignment = vec![0u64; gens.len()];
    loop {
        if let Some(chi) = extend(a, &gens, &assignment, e) {
            out.push(chi);
        }
        // next assignment
        let mut i = 0;
        loop {
            if i == gens.len() {
                return out;
            }
            assignment[i] += 1;
            if assignment[i] < e {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

fn extend(a: &FiniteGroup, gens: &[usize], assignment: &[u64], e: u64) -> Option<Vec<u64>> {
    let mut vals: Vec<Option<u64>> = vec![None; a.order()];
    vals[a.identity()] = Some(0);
    let mut queue = vec![a.identity()];
    while let Some(x) = queue.pop() {
        for (s, k) in gens.iter().zip(assignment) {
            let y = a.mul(x, *s);
            let v = (vals[x].unwrap() + k) % e;
            match vals[y] {
                Some(w) if w != v => return None,
                Some(_) => {}
                None => {
                    vals[y] = Some(v);
                    queue.push(y);
                }
            }
        }
    }
    Some(vals.into_iter().map(|v| v.unwrap()).collect())
}

/// All irreducible characters, trivial first.
pub fn irreducible_characters(group: &FiniteGroup) -> Result<Vec<GroupCharacter>> {
    let (a, c) = split(group)?;
    let m = group.exponent();
    let ea = a.group().exponent();
    let lambdas = abelian_characters(a.group());
    let n = group.order();
    // C-component of each element: g = a·c
    let mut c_part = vec![0usize; n];
    for &ci in c.elements() {
        for &ai in a.elements() {
            c_part[group.mul(ai, ci)] = ci;
        }
    }
    let conj_lambda = |lam: &[u64], x: usize| -> Vec<u64> {
        // (x·λ)(y) = λ(x^-1 y x)
        (0..a.order())
            .map(|loc| {
                let y = a.to_parent(loc);
                lam[a.to_local(group.conjugate(y, x)).unwrap()]
            })
            .collect()
    };
    let mut seen: Vec<Vec<u64>> = Vec::new();
    let mut out = Vec::new();
    for lam in &lambdas {
        if seen.contains(lam) {
            continue;
        }
        let mut stab = Vec::new();
        for &x in c.elements() {
            let l2 = conj_lambda(lam, x);
            if &l2 == lam {
                stab.push(x);
            }
            if !seen.contains(&l2) {
                seen.push(l2);
            }
        }
        let cl = Subgroup::new(group, &stab)?;
        let t_elems: Vec<usize> = group
            .elements()
            .filter(|&g| cl.contains(c_part[g]))
            .collect();
        let t = Subgroup::new(group, &t_elems)?;
        let el = cl.order() as u64;
        let gamma = *cl
            .elements()
            .iter()
            .find(|&&x| group.element_order(x) == el)
            .expect("cyclic stabilizer");
        let mut log_gamma = vec![0i64; n];
        let mut y = group.identity();
        for k in 0..el as i64 {
            log_gamma[y] = k;
            y = group.mul(y, gamma);
        }
        for mu in 0..el as i64 {
            // character of T: λ(a)·μ(c) for t = a·c
            let psi_t = |g: usize| -> CycNumber {
                let cpart = c_part[g];
                let apart = group.mul(g, group.inv(cpart));
                let la = lam[a.to_local(apart).unwrap()] as i64;
                let lam_val = CycNumber::zeta_power(ea, la);
                let mu_val = CycNumber::zeta_power(el, mu * log_gamma[cpart]);
                (&lam_val * &mu_val).coerce(m)
            };
            let inv_t = BigRational::new(BigInt::one(), BigInt::from(t.order()));
            let values = group
                .elements()
                .map(|g| {
                    let mut acc = CycNumber::zero(m);
                    for x in group.elements() {
                        let y = group.conjugate(g, x);
                        if t.contains(y) {
                            acc = &acc + &psi_t(y);
                        }
                    }
                    acc.scale(&inv_t)
                })
                .collect();
            out.push(GroupCharacter { values });
        }
    }
    Ok(out)
}

/// `(1/|G|) Σ_g a(g) conj(b(g))`.
pub fn character_inner(group: &FiniteGroup, a: &GroupCharacter, b: &GroupCharacter) -> CycNumber {
    let mut acc = CycNumber::zero(group.exponent());
    for g in group.elements() {
        acc = &acc + &(&a.values[g] * &b.values[g].conj());
    }
    acc.scale(&BigRational::new(
        BigInt::one(),
        BigInt::from(group.order()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_table(g: &FiniteGroup, expected_count: usize) {
        let chars = irreducible_characters(g).unwrap();
        assert_eq!(chars.len(), expected_count);
        assert!(chars[0].is_trivial());
        let sum_sq: i64 = chars.iter().map(|c| c.degree() * c.degree()).sum();
        assert_eq!(sum_sq, g.order() as i64);
        for (i, a) in chars.iter().enumerate() {
            for (j, b) in chars.iter().enumerate() {
                let ip = character_inner(g, a, b);
                assert_eq!(
                    ip,
                    CycNumber::from_int(1, (i == j) as i64),
                    "<chi_{i}, chi_{j}>"
                );
            }
        }
    }

    #[test]
    fn abelian_tables() {
        check_table(&FiniteGroup::cyclic(6).unwrap(), 6);
        check_table(&FiniteGroup::elementary_abelian(2, 2).unwrap(), 4);
    }

    #[test]
    fn nonabelian_tables() {
        check_table(&FiniteGroup::s3(), 3);
        // F_5 ⋊ C_4: four linear characters and one of degree 4
        check_table(&FiniteGroup::semidirect_cyclic(5, 4, 2).unwrap(), 5);
        check_table(&FiniteGroup::semidirect_cyclic(7, 3, 2).unwrap(), 5);
    }
}
