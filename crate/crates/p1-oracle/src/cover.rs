//! The cover `P¹ → P¹/G` for a group `G` of affine maps over `F_q`.

use std::collections::BTreeSet;

use equiv_rr_engine::{BundleData, CoverData};
use exact_algebra::{Fe, GaloisField};
use group_rep::{FiniteGroup, Subgroup};
use ramification::{descent_exponent, is_weakly_ramified, BundleStalk, LocalDatum};

use crate::affine::{field_of_order, AffineMap};
use crate::divisor::{GDivisor, P1ClosedPoint};
use crate::error::{OracleError, Result};
use crate::local::{cotangent_character, lower_filtration};

/// A `G`-orbit of ramified points with the local data at its representative.
#[derive(Debug, Clone, PartialEq)]
pub struct RamifiedOrbit {
    /// Sorted; the first point is the representative.
    pub points: Vec<P1ClosedPoint>,
    /// Elements of `G` fixing the representative.
    pub inertia: Vec<usize>,
    /// The Sylow p-subgroup of the inertia group.
    pub wild: Vec<usize>,
    /// Generator of the chosen tame complement.
    pub complement_generator: usize,
    pub theta: Fe,
    pub filtration: Vec<usize>,
}

impl RamifiedOrbit {
    pub fn representative(&self) -> &P1ClosedPoint {
        &self.points[0]
    }

    pub fn inertia_subgroup(&self, cover: &P1Cover) -> Result<Subgroup> {
        Ok(Subgroup::new(cover.group(), &self.inertia)?)
    }

    pub fn is_weakly_ramified(&self) -> bool {
        is_weakly_ramified(&self.filtration).unwrap_or(false)
    }
}

/// `P¹_{F_q}` with a faithful action of a finite group of affine maps.
#[derive(Debug, Clone)]
pub struct P1Cover {
    field: GaloisField,
    group: FiniteGroup,
    maps: Vec<AffineMap>,
    ramified: Vec<RamifiedOrbit>,
    data: CoverData,
}

/// The cover for the group generated by `generators` over `F_q`.
pub fn build_cover(q: u32, generators: &[AffineMap]) -> Result<P1Cover> {
    let field = field_of_order(q)?;
    for g in generators {
        g.validate(&field)?;
    }
    let pairs: Vec<(Fe, Fe)> = generators.iter().map(|m| (m.a, m.b)).collect();
    let (group, elems) = FiniteGroup::affine(&field, &pairs)?;
    let maps = elems.into_iter().map(|(a, b)| AffineMap { a, b }).collect();
    P1Cover::from_group(&field, &group, maps)
}

impl P1Cover {
    /// `maps[x]` is the map of the element `x` of `group`.
    pub fn from_group(
        field: &GaloisField,
        group: &FiniteGroup,
        maps: Vec<AffineMap>,
    ) -> Result<Self> {
        if maps.len() != group.order() {
            return Err(OracleError::InvalidMap(format!(
                "{} maps for a group of order {}",
                maps.len(),
                group.order()
            )));
        }
        for m in &maps {
            m.validate(field)?;
        }
        if maps.iter().collect::<BTreeSet<_>>().len() != maps.len() {
            return Err(OracleError::InvalidMap("action is not faithful".into()));
        }
        for x in group.elements() {
            for y in group.elements() {
                if maps[group.mul(x, y)] != maps[x].compose(field, &maps[y]) {
                    return Err(OracleError::InvalidMap(
                        "maps do not respect the group law".into(),
                    ));
                }
            }
        }
        let mut cover = P1Cover {
            field: field.clone(),
            group: group.clone(),
            maps,
            ramified: Vec::new(),
            data: CoverData::new(group, field.characteristic(), field.degree(), 0, Vec::new())?,
        };
        cover.ramified = cover.find_ramification()?;
        let p = field.characteristic();
        let mut places = Vec::new();
        for orb in &cover.ramified {
            let tame = group.closure(&[orb.complement_generator]);
            let d = LocalDatum::new(
                group,
                &orb.inertia,
                &orb.wild,
                &tame,
                field,
                orb.complement_generator,
                orb.theta,
                Some(orb.filtration.clone()),
            )?;
            let deg = cover.place_degree(orb.representative(), orb.inertia.len())?;
            places.push((d, deg));
        }
        cover.data = CoverData::new(group, p, field.degree(), 0, places)?;
        Ok(cover)
    }

    /// Fixed points of `x ↦ ax + b ≠ id` on `P¹` are `∞` and the root of
    /// `(a - 1)x + b`, so every ramified point is rational.
    fn find_ramification(&self) -> Result<Vec<RamifiedOrbit>> {
        let f = &self.field;
        let mut fixed = BTreeSet::new();
        if self.group.order() > 1 {
            fixed.insert(P1ClosedPoint::Infinity);
        }
        for m in self.maps.iter().filter(|m| m.a != 1) {
            let alpha = f.div(m.b, f.sub(1, m.a))?;
            fixed.insert(P1ClosedPoint::rational(f, alpha));
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for w in fixed {
            if seen.contains(&w) {
                continue;
            }
            let points = self.orbit(&w);
            seen.extend(points.iter().cloned());
            out.push(self.local_structure(points)?);
        }
        Ok(out)
    }

    fn local_structure(&self, points: Vec<P1ClosedPoint>) -> Result<RamifiedOrbit> {
        let f = &self.field;
        let p = f.characteristic() as u64;
        let w = &points[0];
        let inertia = self.stabilizer(w);
        let wild: Vec<usize> = inertia
            .iter()
            .copied()
            .filter(|&x| {
                let mut o = self.group.element_order(x);
                while o % p == 0 {
                    o /= p;
                }
                o == 1
            })
            .collect();
        let e = (inertia.len() / wild.len()) as u64;
        let complement_generator = inertia
            .iter()
            .copied()
            .find(|&x| {
                self.group.element_order(x) == e
                    && self
                        .group
                        .closure(&[x])
                        .iter()
                        .all(|y| *y == self.group.identity() || !wild.contains(y))
            })
            .ok_or_else(|| {
                OracleError::Inconsistent(format!("no tame complement in the inertia group at {w}"))
            })?;
        let theta = cotangent_character(f, w, &self.maps[complement_generator])?;
        let imaps: Vec<AffineMap> = inertia.iter().map(|&x| self.maps[x]).collect();
        let filtration = lower_filtration(f, w, &imaps)?;
        Ok(RamifiedOrbit {
            points,
            inertia,
            wild,
            complement_generator,
            theta,
            filtration,
        })
    }

    /// `deg v = e_w Σ_{w' ∈ Gw} deg w' / |G|` for the image `v` of `w`.
    fn place_degree(&self, w: &P1ClosedPoint, e: usize) -> Result<u32> {
        let total: usize = self.orbit(w).iter().map(|x| x.degree()).sum::<usize>() * e;
        if total % self.group.order() != 0 {
            return Err(OracleError::Inconsistent(format!(
                "fractional degree below {w}"
            )));
        }
        Ok((total / self.group.order()) as u32)
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
    pub fn maps(&self) -> &[AffineMap] {
        &self.maps
    }
    pub fn map(&self, x: usize) -> AffineMap {
        self.maps[x]
    }
    /// Generators of `G` as affine maps.
    pub fn generator_maps(&self) -> Vec<AffineMap> {
        self.group
            .generators()
            .iter()
            .map(|&g| self.maps[g])
            .collect()
    }
    pub fn ramified(&self) -> &[RamifiedOrbit] {
        &self.ramified
    }
    /// The engine's view of the cover, places in the order of [`Self::ramified`].
    pub fn data(&self) -> &CoverData {
        &self.data
    }

    pub fn orbit(&self, w: &P1ClosedPoint) -> Vec<P1ClosedPoint> {
        let set: BTreeSet<P1ClosedPoint> =
            self.maps.iter().map(|m| w.image(&self.field, m)).collect();
        set.into_iter().collect()
    }

    pub fn stabilizer(&self, w: &P1ClosedPoint) -> Vec<usize> {
        self.group
            .elements()
            .filter(|&x| w.image(&self.field, &self.maps[x]) == *w)
            .collect()
    }

    /// Order of the inertia group at `w`: the stabilizer of a geometric point.
    pub fn inertia_order(&self, w: &P1ClosedPoint) -> usize {
        self.ramified_orbit_of(w).map_or(1, |o| o.inertia.len())
    }

    pub fn ramified_orbit_of(&self, w: &P1ClosedPoint) -> Option<&RamifiedOrbit> {
        self.ramified.iter().find(|o| o.points.contains(w))
    }

    pub fn is_weakly_ramified(&self) -> bool {
        self.ramified.iter().all(RamifiedOrbit::is_weakly_ramified)
    }

    /// The cover for a subgroup `H`, built over `H` as a standalone group.
    pub fn restrict(&self, h: &Subgroup) -> Result<P1Cover> {
        if h.parent() != &self.group {
            return Err(OracleError::InvalidMap("subgroup of another group".into()));
        }
        let maps = (0..h.order()).map(|i| self.maps[h.to_parent(i)]).collect();
        P1Cover::from_group(&self.field, h.group(), maps)
    }

    /// `Σ n·w` over all ramified points.
    pub fn ramified_divisor(&self, n: i64) -> GDivisor {
        GDivisor::from_entries(
            self.ramified
                .iter()
                .flat_map(|o| o.points.iter().map(move |w| (w.clone(), n))),
        )
    }

    /// Stalk exponent of `O(D)` at each ramified orbit.
    pub fn stalk_exponents(&self, d: &GDivisor) -> Vec<i64> {
        self.ramified
            .iter()
            .map(|o| d.coefficient(o.representative()))
            .collect()
    }

    /// Ramified points whose coefficient is not `-1` modulo `|P_w|`.
    pub fn ew_violations(&self, d: &GDivisor) -> Vec<String> {
        self.ramified
            .iter()
            .filter(|o| {
                (d.coefficient(o.representative()) + 1).rem_euclid(o.wild.len() as i64) != 0
            })
            .map(|o| {
                format!(
                    "n = {} at {} with |P| = {}",
                    d.coefficient(o.representative()),
                    o.representative(),
                    o.wild.len()
                )
            })
            .collect()
    }

    /// `deg (π_* O(D))^G` on `P¹/G`, place by place via the descent exponent.
    pub fn invariant_degree(&self, d: &GDivisor) -> Result<i64> {
        d.check_stable(&self.field, &self.maps)?;
        let mut seen = BTreeSet::new();
        let mut total = 0;
        for (w, n) in d.support() {
            if seen.contains(w) {
                continue;
            }
            seen.extend(self.orbit(w));
            let e = self.inertia_order(w);
            total += descent_exponent(n, e) * self.place_degree(w, e)? as i64;
        }
        Ok(total)
    }

    /// `O(D)` as an equivariant bundle for the engine.
    pub fn line_bundle(&self, d: &GDivisor) -> Result<BundleData> {
        let stalks = self
            .stalk_exponents(d)
            .into_iter()
            .map(BundleStalk::line)
            .collect();
        Ok(BundleData::from_invariant_degree(
            1,
            stalks,
            0,
            self.invariant_degree(d)?,
        ))
    }
}
