//! End-to-end comparison of the explicit cohomology with the engine.

use equiv_rr_engine::{
    degree_identity, euler_characteristic, kock_cross_check, mackey_compare, BundleData,
};
use exact_algebra::{arith::divisors, CycNumber};
use group_rep::{ClassFunction, ClassFunctionSpec, Subgroup};
use ramification::BundleStalk;
use serde::{Deserialize, Serialize};

use crate::cover::P1Cover;
use crate::divisor::{DivisorSpec, GDivisor};
use crate::error::{OracleError, Result};
use crate::{h0_with_action, h1_with_action};

/// Moves the engine's stalk exponent at one place away from the divisor,
/// to exercise the mismatch path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StalkShift {
    pub place: usize,
    pub delta: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassDiff {
    pub class: String,
    pub oracle: CycNumber,
    pub engine: CycNumber,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MackeyEntry {
    pub subgroup_order: usize,
    pub generator: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineComparison {
    pub engine: ClassFunctionSpec,
    pub matches: bool,
    pub diff: Vec<ClassDiff>,
    pub degree_identity: bool,
    pub mackey: Vec<MackeyEntry>,
    pub kock_off_identity: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub divisor: DivisorSpec,
    pub label: String,
    pub degree: i64,
    pub h0_dim: usize,
    pub h1_dim: usize,
    pub serre_duality: bool,
    /// Weak ramification everywhere and `n_w ≡ -1 mod |P_w|` at every ramified point.
    pub hypotheses_hold: bool,
    pub ew_violations: Vec<String>,
    pub oracle: ClassFunctionSpec,
    /// Higman test on `H⁰ ⊕ H¹`.
    pub projective: bool,
    /// Absent when the hypotheses fail.
    pub engine: Option<EngineComparison>,
}

impl VerifyReport {
    /// Every check that applies: the engine comparison under the hypotheses,
    /// and Riemann–Roch always.
    pub fn passed(&self) -> bool {
        self.serre_duality
            && match &self.engine {
                Some(e) => {
                    e.matches
                        && e.degree_identity
                        && e.kock_off_identity
                        && e.mackey.iter().all(|m| m.holds)
                        && self.projective
                }
                None => !self.hypotheses_hold,
            }
    }
}

/// The p-regular cyclic subgroups of `G`, by order then smallest generator.
pub fn p_regular_cyclic_subgroups(cover: &P1Cover) -> Vec<Subgroup> {
    let g = cover.group();
    let p = cover.field().characteristic() as u64;
    divisors(g.order() as u64)
        .into_iter()
        .filter(|d| d % p != 0)
        .flat_map(|d| g.cyclic_subgroups_of_order(d))
        .collect()
}

/// Compare `Brauer(H⁰) - Brauer(H¹)` for `O(D)` with the engine's `χ_{kG}`.
pub fn verify_cover(cover: &P1Cover, d: &GDivisor, expect_ew: bool) -> Result<VerifyReport> {
    verify_cover_shifted(cover, d, expect_ew, None)
}

pub fn verify_cover_shifted(
    cover: &P1Cover,
    d: &GDivisor,
    expect_ew: bool,
    shift: Option<StalkShift>,
) -> Result<VerifyReport> {
    d.check_stable(cover.field(), cover.maps())?;
    let violations = cover.ew_violations(d);
    if expect_ew && !violations.is_empty() {
        return Err(OracleError::HypothesisViolated(violations.join("; ")));
    }
    let h0 = h0_with_action(cover, d)?;
    let h1 = h1_with_action(cover, d)?;
    let oracle = h0.brauer_character()?.sub(&h1.brauer_character()?)?;
    let serre_duality = h0.dim() as i64 - h1.dim() as i64 == d.degree() + 1;
    let projective = h0.module.direct_sum(&h1.module)?.is_projective();
    let hypotheses_hold = cover.is_weakly_ramified() && violations.is_empty();
    let engine = if hypotheses_hold {
        Some(compare_with_engine(cover, d, &oracle, shift)?)
    } else {
        None
    };
    Ok(VerifyReport {
        divisor: d.spec(),
        label: d.to_string(),
        degree: d.degree(),
        h0_dim: h0.dim(),
        h1_dim: h1.dim(),
        serre_duality,
        hypotheses_hold,
        ew_violations: violations,
        oracle: oracle.spec(),
        projective,
        engine,
    })
}

fn shifted_bundle(cover: &P1Cover, d: &GDivisor, shift: Option<StalkShift>) -> Result<BundleData> {
    let mut bundle = cover.line_bundle(d)?;
    if let Some(s) = shift {
        let stalk = bundle
            .stalks
            .get_mut(s.place)
            .ok_or_else(|| OracleError::InvalidMap(format!("no ramified place {}", s.place)))?;
        *stalk = BundleStalk::line(stalk.exponents[0] + s.delta);
    }
    Ok(bundle)
}

fn compare_with_engine(
    cover: &P1Cover,
    d: &GDivisor,
    oracle: &ClassFunction,
    shift: Option<StalkShift>,
) -> Result<EngineComparison> {
    let data = cover.data();
    let bundle = shifted_bundle(cover, d, shift)?;
    let chi = euler_characteristic(data, &bundle)?.class.function;
    let (o, e) = (oracle.spec(), chi.spec());
    let diff = o
        .class_representatives
        .iter()
        .zip(o.values.iter().zip(&e.values))
        .filter(|(_, (a, b))| a != b)
        .map(|(c, (a, b))| ClassDiff {
            class: c.clone(),
            oracle: a.clone(),
            engine: b.clone(),
        })
        .collect::<Vec<_>>();
    let degree_identity =
        degree_identity(data, &bundle, d.degree(), cover.invariant_degree(d)?)?.holds();
    let mut mackey = Vec::new();
    for h in p_regular_cyclic_subgroups(cover) {
        let hc = cover.restrict(&h)?;
        let hb = hc.line_bundle(d)?;
        let holds = mackey_compare(data, &bundle, &h, hc.data(), &hb)?.holds();
        let gen = h
            .elements()
            .iter()
            .copied()
            .find(|&x| cover.group().element_order(x) == h.order() as u64);
        mackey.push(MackeyEntry {
            subgroup_order: h.order(),
            generator: cover.group().label(gen.unwrap_or(0)).to_string(),
            holds,
        });
    }
    let kock_off_identity = kock_cross_check(data, &bundle)?.off_identity_agrees;
    Ok(EngineComparison {
        engine: e,
        matches: diff.is_empty(),
        diff,
        degree_identity,
        mackey,
        kock_off_identity,
    })
}
