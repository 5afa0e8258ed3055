//! Covers `π: X_L → X` and equivariant bundles, described by their data at
//! the ramified places.

use std::collections::BTreeMap;

use exact_algebra::{BigRational, Fe};
use group_rep::{FiniteGroup, GroupSpec, Subgroup};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use ramification::{l_exponent, BundleStalk, LocalDatum, LocalDatumSpec};
use serde::{Deserialize, Serialize};

use crate::error::{EngineError, Result};

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub(crate) fn to_integer(r: &BigRational, what: &str) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(EngineError::NotIntegral(format!("{what} = {r}")))
    }
}

pub(crate) fn to_i64(r: &BigRational, what: &str) -> Result<i64> {
    to_integer(r, what)?
        .to_i64()
        .ok_or_else(|| EngineError::NotIntegral(format!("{what} = {r} overflows")))
}

/// A family of ramified places of `X_L` sharing one local datum: a `G`-orbit
/// for a `G`-cover, or part of one after restriction to a subgroup.
#[derive(Debug, Clone)]
pub struct RamifiedPlace {
    datum: LocalDatum,
    count: BigRational,
}

impl RamifiedPlace {
    pub fn datum(&self) -> &LocalDatum {
        &self.datum
    }
    /// Number of closed points of `X_L` represented.
    pub fn count(&self) -> &BigRational {
        &self.count
    }
    pub fn is_wild(&self) -> bool {
        self.datum.wild_order() > 1
    }
    /// `[k_w : k]` for the base field `k` of degree `base_degree` over `F_p`.
    pub fn relative_degree(&self, base_degree: u32) -> u32 {
        self.datum.residue_degree() / base_degree
    }
    /// `Σ_{w} [k_w : k]`: the number of geometric points represented.
    pub fn geometric_points(&self, base_degree: u32) -> BigRational {
        &self.count * rational(self.relative_degree(base_degree) as i64)
    }
    /// Exponent of the different, `Σ_{s>=0} (|I_{w,s}| - 1)`.
    pub fn different_exponent(&self) -> i64 {
        match self.datum.filtration() {
            Some(f) => f.iter().map(|&x| x as i64 - 1).sum(),
            None => (self.datum.inertia_order() + self.datum.wild_order()) as i64 - 2,
        }
    }
    /// `Σ_{s>=2} (|I_{w,s}| - 1)`; zero for weakly ramified places.
    pub fn higher_different(&self) -> Result<i64> {
        let f = self
            .datum
            .filtration()
            .ok_or(ramification::RamificationError::MissingFiltration)?;
        Ok(f.iter().skip(2).map(|&x| x as i64 - 1).sum())
    }
}

/// A weakly ramified `G`-cover of a curve of genus `g_K` over `k = F_{p^s}`.
#[derive(Debug, Clone)]
pub struct CoverData {
    group: FiniteGroup,
    characteristic: u32,
    base_degree: u32,
    genus: i64,
    places: Vec<RamifiedPlace>,
}

impl CoverData {
    /// Places are given by the datum at one point `w` and the degree
    /// `[k_v : k]` of the place `v` below it.
    pub fn new(
        group: &FiniteGroup,
        characteristic: u32,
        base_degree: u32,
        genus: i64,
        places: Vec<(LocalDatum, u32)>,
    ) -> Result<Self> {
        let mut out = Vec::with_capacity(places.len());
        for (i, (datum, degree)) in places.into_iter().enumerate() {
            if base_degree == 0 || datum.residue_degree() % base_degree != 0 {
                return Err(EngineError::InvalidCover(format!(
                    "place {i}: residue field does not contain k"
                )));
            }
            let rel = datum.residue_degree() / base_degree;
            if degree == 0 || rel % degree != 0 {
                return Err(EngineError::InvalidCover(format!(
                    "place {i}: [k_w:k] = {rel} is not a multiple of deg v = {degree}"
                )));
            }
            let num = group.order() as i64 * degree as i64;
            let den = datum.inertia_order() as i64 * rel as i64;
            if num % den != 0 {
                return Err(EngineError::InvalidCover(format!(
                    "place {i}: |G| deg v / (|I_w| [k_w:k]) = {num}/{den} is not an integer"
                )));
            }
            out.push(RamifiedPlace {
                datum,
                count: rational(num / den),
            });
        }
        Self::from_places(group, characteristic, base_degree, genus, out)
    }

    fn from_places(
        group: &FiniteGroup,
        characteristic: u32,
        base_degree: u32,
        genus: i64,
        places: Vec<RamifiedPlace>,
    ) -> Result<Self> {
        for (i, pl) in places.iter().enumerate() {
            let d = &pl.datum;
            if d.group() != group {
                return Err(EngineError::InvalidCover(format!(
                    "place {i}: datum belongs to another group"
                )));
            }
            if d.characteristic() != characteristic {
                return Err(EngineError::InvalidCover(format!(
                    "place {i}: residue characteristic differs"
                )));
            }
            if base_degree == 0 || d.residue_degree() % base_degree != 0 {
                return Err(EngineError::InvalidCover(format!(
                    "place {i}: residue field does not contain k"
                )));
            }
            if !pl.count.is_positive() {
                return Err(EngineError::InvalidCover(format!(
                    "place {i}: non-positive place count"
                )));
            }
            if !d.has_weakly_ramified_shape() {
                return Err(EngineError::NotWeaklyRamified(i));
            }
            if d.filtration().is_some() && !d.is_weakly_ramified()? {
                return Err(EngineError::NotWeaklyRamified(i));
            }
        }
        Ok(CoverData {
            group: group.clone(),
            characteristic,
            base_degree,
            genus,
            places,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }
    /// `s` with `k = F_{p^s}`.
    pub fn base_degree(&self) -> u32 {
        self.base_degree
    }
    pub fn field_order(&self) -> u64 {
        (self.characteristic as u64).pow(self.base_degree)
    }
    pub fn genus(&self) -> i64 {
        self.genus
    }
    pub fn places(&self) -> &[RamifiedPlace] {
        &self.places
    }
    pub fn is_unramified(&self) -> bool {
        self.places.is_empty()
    }
    pub fn is_tame(&self) -> bool {
        self.places.iter().all(|p| !p.is_wild())
    }
    /// Every inertia group is a `p`-group.
    pub fn inertia_is_wild_everywhere(&self) -> bool {
        self.places.iter().all(|p| p.datum.tame_order() == 1)
    }
    /// `deg_k(v)` of the place below entry `i`.
    pub fn place_degree(&self, i: usize) -> BigRational {
        let pl = &self.places[i];
        &pl.count
            * rational(
                pl.datum.inertia_order() as i64 * pl.relative_degree(self.base_degree) as i64,
            )
            / rational(self.group.order() as i64)
    }

    /// `χ_k(O_{X_L}) = |G| (1 - g_K) - (1/2) Σ_w deg_k(w) d_w` (Riemann–Hurwitz).
    pub fn structure_sheaf_chi(&self) -> Result<BigInt> {
        let mut acc = rational(self.group.order() as i64 * (1 - self.genus));
        for pl in &self.places {
            acc -= pl.geometric_points(self.base_degree) * rational(pl.different_exponent())
                / rational(2);
        }
        to_integer(&acc, "χ(O_{X_L})")
    }

    /// The same curve `X_L` as an `H`-cover of `X_L / H`. Returns the cover
    /// and, for each of its places, the index of the place it came from.
    pub fn restrict(&self, h: &Subgroup) -> Result<(CoverData, Vec<usize>)> {
        if h.parent() != &self.group {
            return Err(EngineError::InvalidCover(
                "subgroup of another group".into(),
            ));
        }
        let g = &self.group;
        let hg = h.group();
        let go = rational(g.order() as i64);
        // (origin, I' elements, generator of C', theta value) -> count
        let mut merged: BTreeMap<(usize, Vec<usize>, usize, Fe), BigRational> = BTreeMap::new();
        let mut wild_of: BTreeMap<(usize, Vec<usize>, usize, Fe), Vec<usize>> = BTreeMap::new();
        for (idx, pl) in self.places.iter().enumerate() {
            let d = &pl.datum;
            for x in g.elements() {
                let xi = g.inv(x);
                let conj = |y: usize| g.conjugate(y, xi);
                let inertia: Vec<usize> = d
                    .inertia()
                    .elements()
                    .iter()
                    .filter_map(|&y| h.to_local(conj(y)))
                    .collect::<Vec<_>>();
                if inertia.len() <= 1 {
                    continue;
                }
                let mut inertia = inertia;
                inertia.sort();
                let mut wild: Vec<usize> = d
                    .wild()
                    .elements()
                    .iter()
                    .filter_map(|&y| h.to_local(conj(y)))
                    .collect();
                wild.sort();
                let e = (inertia.len() / wild.len()) as u64;
                let c0 = *inertia
                    .iter()
                    .find(|&&c| hg.element_order(c) == e)
                    .ok_or_else(|| {
                        EngineError::InvalidCover(
                            "restricted inertia group has no cyclic complement".into(),
                        )
                    })?;
                // theta at x w is theta_w(x^-1 c x)
                let value = d
                    .theta(g.conjugate(h.to_parent(c0), x))
                    .expect("element of I");
                let key = (idx, inertia, c0, value);
                *merged.entry(key.clone()).or_insert_with(BigRational::zero) += &pl.count / &go;
                wild_of.insert(key, wild);
            }
        }
        let mut places = Vec::new();
        let mut origins = Vec::new();
        for ((idx, inertia, c0, value), count) in merged {
            let d = &self.places[idx].datum;
            let wild = &wild_of[&(idx, inertia.clone(), c0, value)];
            let tame = hg.closure(&[c0]);
            let filtration = if wild.len() > 1 {
                vec![inertia.len(), wild.len(), 1]
            } else {
                vec![inertia.len(), 1]
            };
            let datum = LocalDatum::new(
                hg,
                &inertia,
                wild,
                &tame,
                d.residue_field(),
                c0,
                value,
                Some(filtration),
            )?;
            places.push(RamifiedPlace { datum, count });
            origins.push(idx);
        }
        // genus of X_L / H from Riemann–Hurwitz for both covers
        let mut acc = BigRational::from_integer(self.structure_sheaf_chi()?);
        for pl in &places {
            acc += pl.geometric_points(self.base_degree) * rational(pl.different_exponent())
                / rational(2);
        }
        let chi_quotient = acc / rational(hg.order() as i64);
        let genus = 1 - to_i64(&chi_quotient, "χ(O_{X_L/H})")?;
        Ok((
            CoverData::from_places(hg, self.characteristic, self.base_degree, genus, places)?,
            origins,
        ))
    }

    pub fn spec(&self) -> CoverSpec {
        CoverSpec {
            group: self.group.spec(),
            characteristic: self.characteristic,
            base_degree: self.base_degree,
            genus: self.genus,
            places: self
                .places
                .iter()
                .enumerate()
                .map(|(i, pl)| PlaceSpec {
                    datum: pl.datum.spec(),
                    degree: self.place_degree(i).to_integer().to_u32().unwrap_or(0),
                })
                .collect(),
        }
    }

    pub fn from_spec(spec: &CoverSpec) -> Result<Self> {
        let group = FiniteGroup::from_spec(&spec.group)?;
        let places = spec
            .places
            .iter()
            .map(|pl| {
                Ok((
                    LocalDatum::from_spec(&group, spec.characteristic, &pl.datum)?,
                    pl.degree,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            &group,
            spec.characteristic,
            spec.base_degree,
            spec.genus,
            places,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceSpec {
    pub datum: LocalDatumSpec,
    /// `[k_v : k]`
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSpec {
    pub group: GroupSpec,
    pub characteristic: u32,
    pub base_degree: u32,
    pub genus: i64,
    pub places: Vec<PlaceSpec>,
}

/// A `G`-equivariant bundle `E` on `X_L`: its stalk exponents at the ramified
/// places and `χ_k(E^G)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleData {
    pub rank: usize,
    pub stalks: Vec<BundleStalk>,
    pub invariant_chi: i64,
}

impl BundleData {
    pub fn new(rank: usize, stalks: Vec<BundleStalk>, invariant_chi: i64) -> Self {
        BundleData {
            rank,
            stalks,
            invariant_chi,
        }
    }

    /// `χ_k(E^G)` from Hirzebruch–Riemann–Roch on `X`.
    pub fn from_invariant_degree(
        rank: usize,
        stalks: Vec<BundleStalk>,
        genus: i64,
        invariant_degree: i64,
    ) -> Self {
        let chi = crate::formula::chi_hrr(rank as i64, genus, invariant_degree);
        BundleData {
            rank,
            stalks,
            invariant_chi: chi,
        }
    }

    /// `deg E^G`.
    pub fn invariant_degree(&self, genus: i64) -> i64 {
        self.invariant_chi - self.rank as i64 * (1 - genus)
    }

    /// Stalk counts, ranks and the exponent condition at wild places.
    pub fn validate(&self, cover: &CoverData) -> Result<()> {
        if self.stalks.len() != cover.places().len() {
            return Err(EngineError::StalkCount {
                expected: cover.places().len(),
                got: self.stalks.len(),
            });
        }
        for (i, (st, pl)) in self.stalks.iter().zip(cover.places()).enumerate() {
            if st.rank() != self.rank {
                return Err(EngineError::RankMismatch {
                    place: i,
                    expected: self.rank,
                    got: st.rank(),
                });
            }
            let wp = pl.datum().wild_order();
            if let Some(&n) = st
                .exponents
                .iter()
                .find(|&&n| (n + 1).rem_euclid(wp as i64) != 0)
            {
                return Err(EngineError::EwViolation {
                    place: i,
                    n,
                    wild_order: wp,
                });
            }
        }
        Ok(())
    }

    /// `l_{w,i}` for every place.
    pub fn l_exponents(&self, cover: &CoverData) -> Result<Vec<Vec<i64>>> {
        self.validate(cover)?;
        self.stalks
            .iter()
            .zip(cover.places())
            .map(|(st, pl)| {
                st.exponents
                    .iter()
                    .map(|&n| {
                        Ok(l_exponent(
                            n,
                            pl.datum().wild_order(),
                            pl.datum().tame_order(),
                        )?)
                    })
                    .collect()
            })
            .collect()
    }

    /// The same bundle on the `H`-cover returned by [`CoverData::restrict`].
    pub fn restrict(
        &self,
        cover: &CoverData,
        restricted: &CoverData,
        origins: &[usize],
    ) -> Result<BundleData> {
        let deg_e = crate::formula::bundle_degree(cover, self)?;
        let stalks: Vec<BundleStalk> = origins.iter().map(|&i| self.stalks[i].clone()).collect();
        let probe = BundleData {
            rank: self.rank,
            stalks,
            invariant_chi: 0,
        };
        let ram = crate::formula::ramification_degree(restricted, &probe)?;
        let deg_eh = (deg_e - ram) / rational(restricted.group().order() as i64);
        let deg_eh = to_i64(&deg_eh, "deg E^H")?;
        Ok(BundleData::from_invariant_degree(
            self.rank,
            probe.stalks,
            restricted.genus(),
            deg_eh,
        ))
    }
}
