//! The projective indecomposables `M_w(j) = Ind_{C_w}^{I_w}(theta^j)`.

use exact_algebra::{lift_exponent, BigRational, CycNumber, FqMatrix};
use group_rep::{pim_multiplicities, ClassFunction, K0Class, MatrixModule, Subgroup};

use crate::datum::LocalDatum;
use crate::error::{RamificationError, Result};

/// `C_w` as a subgroup of the standalone inertia group.
pub fn tame_in_inertia(dat: &LocalDatum) -> Subgroup {
    let i = dat.inertia();
    let local: Vec<usize> = dat
        .tame()
        .elements()
        .iter()
        .map(|&c| i.to_local(c).unwrap())
        .collect();
    Subgroup::new(i.group(), &local).expect("C lies in I")
}

/// Character on `c_local` (from [`tame_in_inertia`]) of the `theta^j` line viewed over `F_{p^s}`:
/// `c ↦ Σ_{a < f_w/s} lift(theta(c))^(j p^(s a))`. Requires `s | f_w`.
pub fn line_class(
    dat: &LocalDatum,
    c_local: &Subgroup,
    j: i64,
    base_degree: u32,
) -> Result<ClassFunction> {
    let f = dat.residue_degree();
    if base_degree == 0 || f % base_degree != 0 {
        return Err(RamificationError::InvalidDatum(format!(
            "base field of degree {base_degree} is not contained in k_w of degree {f}"
        )));
    }
    let p = dat.characteristic();
    let i = dat.inertia();
    let e = dat.tame_order() as u64;
    let q = (p as u64).pow(base_degree);
    let conj = f / base_degree;
    let k = dat.residue_field();
    let mut values = Vec::new();
    for &r in c_local.group().regular_classes(p).reps.iter() {
        let parent = i.to_parent(c_local.to_parent(r));
        let t = dat.theta(parent).expect("C lies in I");
        let base = lift_exponent(k, t, e)? as i64;
        let mut acc = CycNumber::zero(e);
        let mut qa = 1u64;
        for _ in 0..conj {
            let ex = (base as i128 * j as i128 * qa as i128).rem_euclid(e as i128) as i64;
            acc = &acc + &CycNumber::zeta_power(e, ex);
            qa = qa * q % e.max(1);
        }
        values.push(acc);
    }
    Ok(ClassFunction::new(c_local.group(), p, values)?)
}

/// Brauer character on `I_w` of the `k_w`-line on which `I_w` acts through
/// `theta^m` (trivially on `P_w`), viewed over `F_{p^s}`. This is the
/// character of the graded pieces `m_w^a / m_w^(a+1)`.
pub fn inflated_line_class(dat: &LocalDatum, m: i64, base_degree: u32) -> Result<ClassFunction> {
    let f = dat.residue_degree();
    if base_degree == 0 || f % base_degree != 0 {
        return Err(RamificationError::InvalidDatum(format!(
            "base field of degree {base_degree} is not contained in k_w of degree {f}"
        )));
    }
    let p = dat.characteristic();
    let i = dat.inertia();
    let e = dat.tame_order() as u64;
    let q = (p as u64).pow(base_degree) % e.max(1);
    let k = dat.residue_field();
    let mut values = Vec::new();
    for &r in i.group().regular_classes(p).reps.iter() {
        let t = dat.theta(i.to_parent(r)).expect("element of I");
        let base = lift_exponent(k, t, e)? as i128;
        let mut acc = CycNumber::zero(e);
        let mut qa = 1u64;
        for _ in 0..f / base_degree {
            acc = &acc
                + &CycNumber::zeta_power(
                    e,
                    (base * m as i128 * qa as i128).rem_euclid(e as i128) as i64,
                );
            qa = qa * q % e.max(1);
        }
        values.push(acc);
    }
    Ok(ClassFunction::new(i.group(), p, values)?)
}

/// Class of `M_w(j)` in `K0(F_{p^s}[I_w]) ⊗ Q`, with the `k_w`-line viewed
/// over the field of degree `base_degree`.
pub fn mw_class_over(dat: &LocalDatum, j: i64, base_degree: u32) -> Result<K0Class> {
    let c_local = tame_in_inertia(dat);
    let line = line_class(dat, &c_local, j, base_degree)?;
    Ok(K0Class::of_projective(ClassFunction::induce(
        &c_local, &line,
    )?))
}

/// Class of `M_w(j)` as an `F_p[I_w]`-module: the `k_w`-line has
/// `[k_w:F_p]` Galois-conjugate eigenvalues.
pub fn mw_projective_class(dat: &LocalDatum, j: i64) -> Result<K0Class> {
    mw_class_over(dat, j, 1)
}

/// `M_w(j)` as an explicit `k_w[I_w]`-module.
pub fn mw_module(dat: &LocalDatum, j: i64) -> Result<MatrixModule> {
    let k = dat.residue_field();
    let i = dat.inertia();
    let c_local = tame_in_inertia(dat);
    Ok(MatrixModule::induced_from_line(&c_local, k, |x| {
        let t = dat.theta(i.to_parent(x)).expect("C lies in I");
        k.pow(t, j)
    })?)
}

/// Multiplicities of `M_w(j)`, `j = 0..e`, over `k̄` in a class on `I_w`.
pub fn decompose_local(dat: &LocalDatum, class: &K0Class) -> Result<Vec<BigRational>> {
    let c_local = tame_in_inertia(dat);
    let (c0, mult) = pim_multiplicities(class, &c_local)?;
    // pim_multiplicities indexes by c0 ↦ zeta^i; convert to theta powers via lift(theta(c0))
    let e = dat.tame_order() as u64;
    let t0 = dat.theta(dat.inertia().to_parent(c0)).expect("C lies in I");
    let u = lift_exponent(dat.residue_field(), t0, e)?;
    let mut out = vec![BigRational::from_integer(0.into()); e as usize];
    for j in 0..e {
        out[j as usize] = mult[(j * u % e) as usize].clone();
    }
    Ok(out)
}

/// Eigenvalue exponents `n` (eigenvalue `theta(c0)^n`) of a tame module over
/// `k_w[C_w]`, sorted. The module is given by the matrix of `c0`.
pub fn tame_exponents(dat: &LocalDatum, c0_matrix: &FqMatrix) -> Result<Vec<u64>> {
    let k = dat.residue_field();
    let cp = c0_matrix.charpoly()?;
    let ring = exact_algebra::PolyRing::new(k);
    let e = dat.tame_order() as u64;
    let mut out = Vec::new();
    for n in 0..e {
        let ev = k.pow(dat.theta_value(), n as i64);
        for _ in 0..ring.root_multiplicity(&cp, ev) {
            out.push(n);
        }
    }
    if out.len() != c0_matrix.rows() {
        return Err(RamificationError::InvalidDatum(
            "module is not a sum of theta powers".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_algebra::GaloisField;
    use group_rep::FiniteGroup;

    fn c2_datum() -> LocalDatum {
        let g = FiniteGroup::cyclic(2).unwrap();
        let f5 = GaloisField::prime(5).unwrap();
        LocalDatum::new(&g, &[0, 1], &[0], &[0, 1], &f5, 1, 4, Some(vec![2, 1])).unwrap()
    }

    fn s3_datum() -> LocalDatum {
        let g = FiniteGroup::s3();
        let all: Vec<usize> = g.elements().collect();
        let p = g.sylow(3);
        let c = g.sylow(2);
        let t = c
            .elements()
            .iter()
            .copied()
            .find(|&x| x != g.identity())
            .unwrap();
        let f3 = GaloisField::prime(3).unwrap();
        LocalDatum::new(
            &g,
            &all,
            p.elements(),
            c.elements(),
            &f3,
            t,
            2,
            Some(vec![6, 3, 1]),
        )
        .unwrap()
    }

    #[test]
    fn tame_class_is_the_line() {
        let d = c2_datum();
        let m1 = mw_projective_class(&d, 1).unwrap();
        assert_eq!(
            m1.function.values(),
            &[CycNumber::one(1), CycNumber::from_int(1, -1)]
        );
        let m0 = mw_projective_class(&d, 0).unwrap();
        assert_eq!(
            m0.function,
            ClassFunction::constant(d.inertia().group(), 5, 1)
        );
    }

    #[test]
    fn s3_value_at_transposition() {
        let d = s3_datum();
        let m = mw_projective_class(&d, 1).unwrap();
        let ig = d.inertia().group();
        let t = ig.p_regular_classes(3)[1];
        // brute force: (1/2) Σ_x theta(x^-1 t x) over x with x^-1 t x ∈ C
        let c = tame_in_inertia(&d);
        let mut acc = 0;
        for x in ig.elements() {
            let y = ig.conjugate(t, x);
            if c.contains(y) {
                acc += if y == ig.identity() { 1 } else { -1 };
            }
        }
        assert_eq!(m.function.at(t).unwrap(), &CycNumber::from_int(1, acc / 2));
        assert_eq!(m.function.at(t).unwrap(), &CycNumber::from_int(1, -1));
        assert!(mw_module(&d, 1).unwrap().is_projective());
    }

    #[test]
    fn inflated_line_restricts_to_line() {
        let d = s3_datum();
        let c = tame_in_inertia(&d);
        for m in -3..4 {
            let inflated = inflated_line_class(&d, m, 1).unwrap();
            assert_eq!(
                inflated.restrict(&c).unwrap(),
                line_class(&d, &c, m, 1).unwrap()
            );
        }
    }

    #[test]
    fn decomposition_recovers_basis() {
        let d = s3_datum();
        for j in 0..2 {
            let m = mw_class_over(&d, j, 1).unwrap();
            let mult = decompose_local(&d, &m).unwrap();
            for (i, c) in mult.iter().enumerate() {
                assert_eq!(c, &BigRational::from_integer(((i as i64) == j).into()));
            }
        }
    }
}
