//! Matrix representations of finite groups over finite fields.

use std::collections::VecDeque;

use exact_algebra::arith::{lcm, multiplicative_order};
use exact_algebra::{lift_exponent, CycNumber, Fe, FqMatrix, GaloisField, PolyRing};

use crate::classfn::{ClassFunction, K0Class};
use crate::error::{GroupError, Result};
use crate::group::FiniteGroup;
use crate::subgroup::Subgroup;

/// Higman systems are solved literally only up to this dimension.
pub const HIGMAN_SYSTEM_MAX_DIM: usize = 16;

#[derive(Clone, Debug)]
pub struct MatrixModule {
    group: FiniteGroup,
    field: GaloisField,
    dim: usize,
    generator_matrices: Vec<FqMatrix>,
    element_matrices: Vec<FqMatrix>,
}

impl MatrixModule {
    /// Build from one matrix per group generator, checking that the assignment
    /// extends to a homomorphism. A group without generators gets the zero
    /// module; use [`MatrixModule::with_dim`] to fix the dimension.
    pub fn new(
        group: &FiniteGroup,
        field: &GaloisField,
        generator_matrices: Vec<FqMatrix>,
    ) -> Result<Self> {
        let dim = generator_matrices.first().map_or(0, |m| m.rows());
        Self::with_dim(group, field, dim, generator_matrices)
    }

    pub fn with_dim(
        group: &FiniteGroup,
        field: &GaloisField,
        dim: usize,
        generator_matrices: Vec<FqMatrix>,
    ) -> Result<Self> {
        let gens = group.generators();
        if generator_matrices.len() != gens.len() {
            return Err(GroupError::BadModule(format!(
                "{} matrices for {} generators",
                generator_matrices.len(),
                gens.len()
            )));
        }
        for m in &generator_matrices {
            if m.rows() != dim || m.cols() != dim {
                return Err(GroupError::BadModule(
                    "generator matrices have inconsistent sizes".into(),
                ));
            }
            if m.field() != field {
                return Err(GroupError::BadModule(
                    "generator matrix over a different field".into(),
                ));
            }
        }
        // propagate along the Cayley graph and check every edge
        let mut mats: Vec<Option<FqMatrix>> = vec![None; group.order()];
        mats[group.identity()] = Some(FqMatrix::identity(field, dim));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            let mx = mats[x].clone().unwrap();
            for (s, ms) in gens.iter().zip(&generator_matrices) {
                let y = group.mul(x, *s);
                let my = mx.mul(ms).map_err(GroupError::from)?;
                match &mats[y] {
                    Some(existing) if existing != &my => {
                        return Err(GroupError::BadModule(format!(
                            "matrices violate a relation at element {}",
                            group.label(y)
                        )))
                    }
                    Some(_) => {}
                    None => {
                        mats[y] = Some(my);
                        queue.push_back(y);
                    }
                }
            }
        }
        let element_matrices: Vec<FqMatrix> = mats
            .into_iter()
            .map(|m| m.expect("generators span the group"))
            .collect();
        Ok(MatrixModule {
            group: group.clone(),
            field: field.clone(),
            dim,
            generator_matrices,
            element_matrices,
        })
    }

    /// Build from a function giving the matrix of every element.
    pub fn from_element_fn(
        group: &FiniteGroup,
        field: &GaloisField,
        f: impl Fn(usize) -> FqMatrix,
    ) -> Result<Self> {
        let dim = f(group.identity()).rows();
        let mats = group.generators().iter().map(|&g| f(g)).collect();
        Self::with_dim(group, field, dim, mats)
    }

    pub fn trivial(group: &FiniteGroup, field: &GaloisField) -> Self {
        Self::from_element_fn(group, field, |_| FqMatrix::identity(field, 1))
            .expect("trivial module")
    }

    pub fn zero(group: &FiniteGroup, field: &GaloisField) -> Self {
        Self::from_element_fn(group, field, |_| FqMatrix::zeros(field, 0, 0)).expect("zero module")
    }

    /// The left regular module `kG` with basis indexed by group elements.
    pub fn regular(group: &FiniteGroup, field: &GaloisField) -> Self {
        let n = group.order();
        Self::from_element_fn(group, field, |g| {
            let mut m = FqMatrix::zeros(field, n, n);
            for x in 0..n {
                m.set(group.mul(g, x), x, 1);
            }
            m
        })
        .expect("regular module")
    }

    /// `Ind_H^G` of a one-dimensional representation `chi` of `H`, given on
    /// parent elements of `H`. Basis: left coset representatives of `H`.
    pub fn induced_from_line(
        h: &Subgroup,
        field: &GaloisField,
        chi: impl Fn(usize) -> Fe,
    ) -> Result<Self> {
        let g = h.parent();
        let reps = h.left_transversal();
        let k = reps.len();
        let mut coset_of = vec![(0usize, 0usize); g.order()];
        for (i, &t) in reps.iter().enumerate() {
            for &x in h.elements() {
                coset_of[g.mul(t, x)] = (i, x);
            }
        }
        Self::from_element_fn(g, field, |s| {
            let mut m = FqMatrix::zeros(field, k, k);
            for (i, &t) in reps.iter().enumerate() {
                let (j, x) = coset_of[g.mul(s, t)];
                m.set(j, i, chi(x));
            }
            m
        })
    }

    /// The permutation module `k[G/H]`.
    pub fn permutation(h: &Subgroup, field: &GaloisField) -> Self {
        Self::induced_from_line(h, field, |_| 1).expect("permutation module")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
    pub fn field(&self) -> &GaloisField {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn generator_matrices(&self) -> &[FqMatrix] {
        &self.generator_matrices
    }
    pub fn matrix(&self, g: usize) -> &FqMatrix {
        &self.element_matrices[g]
    }

    pub fn direct_sum(&self, o: &Self) -> Result<Self> {
        if self.group != o.group || self.field != o.field {
            return Err(GroupError::GroupMismatch);
        }
        let mats = self
            .generator_matrices
            .iter()
            .zip(&o.generator_matrices)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Self::with_dim(&self.group, &self.field, self.dim + o.dim, mats)
    }

    /// Contragredient module: `g` acts by the transpose of `rho(g^-1)`.
    pub fn dual(&self) -> Self {
        let g = &self.group;
        Self::from_element_fn(g, &self.field, |x| self.matrix(g.inv(x)).transpose())
            .expect("dual module")
    }

    pub fn restrict(&self, h: &Subgroup) -> Result<Self> {
        if h.parent() != &self.group {
            return Err(GroupError::GroupMismatch);
        }
        Self::from_element_fn(h.group(), &self.field, |local| {
            self.matrix(h.to_parent(local)).clone()
        })
    }

    /// Brauer character of the module.
    pub fn brauer_character(&self) -> Result<ClassFunction> {
        let p = self.field.characteristic();
        let cls = self.group.regular_classes(p);
        let m = cls.conductor;
        let mut values = Vec::with_capacity(cls.reps.len());
        for &g in &cls.reps {
            values.push(self.brauer_value(g, m)?);
        }
        ClassFunction::new(&self.group, p, values)
    }

    fn brauer_value(&self, g: usize, conductor: u64) -> Result<CycNumber> {
        if self.dim == 0 {
            return Ok(CycNumber::zero(conductor));
        }
        let p = self.field.characteristic();
        let d = self.group.element_order(g);
        let s = self.field.degree();
        let big_n = lcm(
            s as u64,
            multiplicative_order(p as u64, d).expect("p-regular order") as u64,
        ) as u32;
        let big = GaloisField::conway(p, big_n)?;
        let cp = self.matrix(g).charpoly()?;
        let ring = PolyRing::new(&big);
        let cp_big = PolyRing::new(&self.field).embed(&cp, &big)?;
        let step = (big.order() as u64 - 1) / d;
        let mut total = 0usize;
        let mut value = CycNumber::zero(conductor);
        for k in 0..d {
            let zeta = big.exp((k * step) as i64);
            let mult = ring.root_multiplicity(&cp_big, zeta);
            if mult > 0 {
                total += mult;
                let e = lift_exponent(&big, zeta, conductor)?;
                value = &value + &CycNumber::zeta_power(conductor, e as i64).scale_int(mult as i64);
            }
        }
        if total != self.dim {
            return Err(GroupError::BadModule(format!(
                "element {} has eigenvalues outside the {d}-th roots of unity",
                self.group.label(g)
            )));
        }
        Ok(value)
    }

    /// Sum of `rho(s)` over a Sylow p-subgroup.
    fn sylow_norm(&self, sylow: &Subgroup) -> FqMatrix {
        let mut n = FqMatrix::zeros(&self.field, self.dim, self.dim);
        for &s in sylow.elements() {
            n = n.add(self.matrix(s)).expect("same shape");
        }
        n
    }

    /// Projectivity over `kG`, decided by freeness over a Sylow p-subgroup `S`:
    /// the module is free over `kS` iff the norm element has rank `dim/|S|`.
    pub fn is_projective(&self) -> bool {
        let sylow = self.group.sylow(self.field.characteristic());
        let rank = self.sylow_norm(&sylow).rank();
        rank * sylow.order() == self.dim
    }

    /// An endomorphism `phi` with `Σ_{s∈S} s phi s^-1 = id`, verified before
    /// being returned; `None` when the module is not projective.
    pub fn higman_witness(&self) -> Option<FqMatrix> {
        let f = &self.field;
        let sylow = self.group.sylow(f.characteristic());
        let norm = self.sylow_norm(&sylow);
        let (_, pivots) = norm.rref();
        if pivots.len() * sylow.order() != self.dim {
            return None;
        }
        // basis s·e_c for s ∈ S and c a pivot column of the norm
        let d = self.dim;
        let mut basis = FqMatrix::zeros(f, d, d);
        let mut col = 0;
        let mut id_cols = Vec::new();
        for &s in sylow.elements() {
            let ms = self.matrix(s);
            for &c in &pivots {
                if s == self.group.identity() {
                    id_cols.push(col);
                }
                for r in 0..d {
                    basis.set(r, col, ms.get(r, c));
                }
                col += 1;
            }
        }
        let inv = basis.inverse().ok()?;
        let mut proj = FqMatrix::zeros(f, d, d);
        for c in id_cols {
            proj.set(c, c, 1);
        }
        let phi = basis.mul(&proj).ok()?.mul(&inv).ok()?;
        let mut trace = FqMatrix::zeros(f, d, d);
        for &s in sylow.elements() {
            let conj = self
                .matrix(s)
                .mul(&phi)
                .ok()?
                .mul(self.matrix(self.group.inv(s)))
                .ok()?;
            trace = trace.add(&conj).ok()?;
        }
        trace.is_identity().then_some(phi)
    }

    /// Solve the Higman system `Σ_{s∈S} s phi s^-1 = id` for `phi` directly.
    /// Only available up to [`HIGMAN_SYSTEM_MAX_DIM`].
    pub fn higman_system_solvable(&self) -> Option<bool> {
        let d = self.dim;
        if d > HIGMAN_SYSTEM_MAX_DIM {
            return None;
        }
        if d == 0 {
            return Some(true);
        }
        let f = &self.field;
        let sylow = self.group.sylow(f.characteristic());
        // unknown phi[k][l] at index k*d + l; equation (i, j)
        let mut sys = FqMatrix::zeros(f, d * d, d * d);
        for &s in sylow.elements() {
            let a = self.matrix(s);
            let b = self.matrix(self.group.inv(s));
            for i in 0..d {
                for k in 0..d {
                    let aik = a.get(i, k);
                    if aik == 0 {
                        continue;
                    }
                    for l in 0..d {
                        for j in 0..d {
                            let blj = b.get(l, j);
                            if blj == 0 {
                                continue;
                            }
                            let cur = sys.get(i * d + j, k * d + l);
                            sys.set(i * d + j, k * d + l, f.add(cur, f.mul(aik, blj)));
                        }
                    }
                }
            }
        }
        let mut rhs = vec![0; d * d];
        for i in 0..d {
            rhs[i * d + i] = 1;
        }
        Some(sys.solve(&rhs).expect("square system").is_some())
    }

    /// K0 class of a module already known to be projective.
    pub fn k0_class(&self) -> Result<K0Class> {
        if !self.is_projective() {
            return Err(GroupError::BadModule("module is not projective".into()));
        }
        Ok(K0Class::of_projective(self.brauer_character()?))
    }
}
