//! Corpus manifests: covers, divisors on them and the per-case reports.

use exact_algebra::Fe;
use serde::{Deserialize, Serialize};

use crate::affine::AffineMap;
use crate::cover::{build_cover, P1Cover};
use crate::divisor::{DivisorSpec, GDivisor};
use crate::error::{OracleError, Result};
use crate::local::local_freeness_check;
use crate::verify::{verify_cover_shifted, StalkShift, VerifyReport};

pub const MANIFEST_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub version: u32,
    pub cases: Vec<CorpusCase>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusCase {
    pub id: String,
    pub family: String,
    pub q: u32,
    pub generators: Vec<AffineMap>,
    pub divisors: Vec<DivisorCase>,
    /// Whether every divisor is expected to satisfy `n ≡ -1 mod |P_w|`.
    #[serde(default = "default_true")]
    pub expect_ew: bool,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorCase {
    #[serde(flatten)]
    pub divisor: DivisorSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub engine_stalk_shift: Option<StalkShift>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceSummary {
    pub point: String,
    pub orbit_size: usize,
    pub inertia_order: usize,
    pub wild_order: usize,
    pub theta: Fe,
    pub filtration: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalFreenessEntry {
    pub point: String,
    pub n: i64,
    pub projective: bool,
    pub expected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub id: String,
    pub family: String,
    pub q: u32,
    pub group_order: usize,
    pub places: Vec<PlaceSummary>,
    pub divisors: Vec<VerifyReport>,
    pub local_freeness: Vec<LocalFreenessEntry>,
    pub passed: bool,
}

impl CorpusManifest {
    pub fn validate(&self) -> Result<()> {
        if self.version != MANIFEST_VERSION {
            return Err(OracleError::InvalidMap(format!(
                "manifest version {} (expected {MANIFEST_VERSION})",
                self.version
            )));
        }
        Ok(())
    }
}

pub fn place_summaries(cover: &P1Cover) -> Vec<PlaceSummary> {
    cover
        .ramified()
        .iter()
        .map(|o| PlaceSummary {
            point: o.representative().to_string(),
            orbit_size: o.points.len(),
            inertia_order: o.inertia.len(),
            wild_order: o.wild.len(),
            theta: o.theta,
            filtration: o.filtration.clone(),
        })
        .collect()
}

/// `local_freeness_check` at every ramified orbit for `n ∈ [-2p, 2p]`,
/// against the prediction `weakly ramified ∧ n ≡ -1 mod |P_w|`.
pub fn local_freeness_table(cover: &P1Cover) -> Result<Vec<LocalFreenessEntry>> {
    let p = cover.field().characteristic() as i64;
    let mut out = Vec::new();
    for o in cover.ramified() {
        let w = o.representative();
        for n in -2 * p..=2 * p {
            let expected = o.is_weakly_ramified() && (n + 1).rem_euclid(o.wild.len() as i64) == 0;
            out.push(LocalFreenessEntry {
                point: w.to_string(),
                n,
                projective: local_freeness_check(cover, w, n)?,
                expected,
            });
        }
    }
    Ok(out)
}

pub fn run_case(case: &CorpusCase) -> Result<CaseReport> {
    let cover = build_cover(case.q, &case.generators)?;
    let mut divisors = Vec::new();
    for dc in &case.divisors {
        let d = GDivisor::from_spec(cover.field(), &dc.divisor)?;
        divisors.push(verify_cover_shifted(
            &cover,
            &d,
            case.expect_ew,
            dc.engine_stalk_shift,
        )?);
    }
    let local_freeness = local_freeness_table(&cover)?;
    let passed = divisors.iter().all(VerifyReport::passed)
        && local_freeness.iter().all(|e| e.projective == e.expected);
    Ok(CaseReport {
        id: case.id.clone(),
        family: case.family.clone(),
        q: case.q,
        group_order: cover.group().order(),
        places: place_summaries(&cover),
        divisors,
        local_freeness,
        passed,
    })
}
