//! `verify-cover` and `suite`: the P¹ oracle over a corpus manifest.

use equiv_rr_engine::CoverData;
use p1_oracle::{
    build_cover, run_case, verify_cover, CaseReport, ClassDiff, CorpusCase, CorpusManifest,
    GDivisor, P1ClosedPoint, P1Cover, VerifyReport,
};
use psi_part::{ra, Psi};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::commands::{closed_forms, ClosedForm};
use crate::error::{CliError, Result};
use crate::report::{columns, Status, Table};

pub const BUILTIN_CORPUS: &str = include_str!("../data/corpus.json");

pub const VERIFY_FORMULAS: &[&str] = &[
    "χ_{kG}(E) = [H⁰(X_L, E)] − [H¹(X_L, E)] as Brauer characters on the p-regular classes",
    "χ_{kG}(E) = χ_k(E^G)·[kG] − rk(E)·[N(π)] + [W_G(E)]",
];

pub const SUITE_FORMULAS: &[&str] = &[
    "χ_{kG}(E) = [H⁰(X_L, E)] − [H¹(X_L, E)] as Brauer characters on the p-regular classes",
    "χ_{kG}(E) = χ_k(E^G)·[kG] − rk(E)·[N(π)] + [W_G(E)]",
    "Res^G_H χ_{kG}(E) = χ_{kH}(E)",
    "ra_E(ψ) = 0 when every inertia group is a p-group",
    "ra_E(ψ) = (rk E/|G|) Σ_w Σ_{a=0}^{d_w−1} j^{(a)}_{ψ,w}·[k_w:F_p]/d_w for tame covers, deg ψ = 1 and E = π*F(−Z_L)",
];

/// Random divisors added to each case by `suite`.
pub const RANDOM_DIVISORS: usize = 2;

pub fn builtin_manifest() -> Result<CorpusManifest> {
    crate::case::parse("<built-in corpus>", BUILTIN_CORPUS)
}

pub fn check_manifest(m: &CorpusManifest) -> Result<()> {
    m.validate().map_err(|e| CliError::Invalid(e.to_string()))
}

// ------------------------------------------------------------ verify-cover

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyResult {
    pub cases: Vec<CaseReport>,
    pub passed: usize,
    pub failed: usize,
}

/// Run every case, naming the case in hypothesis violations.
fn run_all(cases: &[CorpusCase]) -> Result<Vec<CaseReport>> {
    cases
        .par_iter()
        .map(|c| {
            run_case(c).map_err(|e| match CliError::from(e) {
                CliError::Hypothesis { assumption, detail } => CliError::Hypothesis {
                    assumption,
                    detail: format!("case {}: {detail}", c.id),
                },
                e => CliError::Invalid(format!("case {}: {e}", c.id)),
            })
        })
        .collect()
}

pub fn verify(manifest: &CorpusManifest) -> Result<(Status, VerifyResult)> {
    check_manifest(manifest)?;
    let cases = run_all(&manifest.cases)?;
    let passed = cases.iter().filter(|c| c.passed).count();
    let failed = cases.len() - passed;
    Ok((
        Status::of(failed == 0),
        VerifyResult {
            cases,
            passed,
            failed,
        },
    ))
}

fn diff_text(diff: &[ClassDiff]) -> String {
    diff.iter()
        .map(|d| format!("{}: oracle {} engine {}", d.class, d.oracle, d.engine))
        .collect::<Vec<_>>()
        .join("; ")
}

impl Table for VerifyResult {
    fn table(&self) -> String {
        let mut rows = Vec::new();
        for c in &self.cases {
            for d in &c.divisors {
                let (matches, diff) = match &d.engine {
                    Some(e) => (e.matches.to_string(), diff_text(&e.diff)),
                    None => ("skipped".into(), String::new()),
                };
                rows.push(vec![
                    c.id.clone(),
                    c.group_order.to_string(),
                    d.label.clone(),
                    format!("{} {}", d.h0_dim, d.h1_dim),
                    matches,
                    d.passed().to_string(),
                    diff,
                ]);
            }
        }
        let mut out = columns(
            &[
                "case", "|G|", "divisor", "h⁰ h¹", "matches", "passed", "diff",
            ],
            &rows,
        );
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}

// ------------------------------------------------------------------- suite

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivisorSummary {
    pub label: String,
    pub degree: i64,
    pub h0_dim: usize,
    pub h1_dim: usize,
    pub serre_duality: bool,
    pub hypotheses_hold: bool,
    pub projective: bool,
    /// Absent when the hypotheses fail.
    pub matches: Option<bool>,
    pub degree_identity: Option<bool>,
    pub mackey: Option<bool>,
    pub mackey_subgroups: usize,
    pub kock_off_identity: Option<bool>,
    pub diff: Vec<ClassDiff>,
    pub passed: bool,
}

impl DivisorSummary {
    pub fn of(v: &VerifyReport) -> Self {
        let e = v.engine.as_ref();
        DivisorSummary {
            label: v.label.clone(),
            degree: v.degree,
            h0_dim: v.h0_dim,
            h1_dim: v.h1_dim,
            serre_duality: v.serre_duality,
            hypotheses_hold: v.hypotheses_hold,
            projective: v.projective,
            matches: e.map(|e| e.matches),
            degree_identity: e.map(|e| e.degree_identity),
            mackey: e.map(|e| e.mackey.iter().all(|m| m.holds)),
            mackey_subgroups: e.map_or(0, |e| e.mackey.len()),
            kock_off_identity: e.map(|e| e.kock_off_identity),
            diff: e.map(|e| e.diff.clone()).unwrap_or_default(),
            passed: v.passed(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RaCheck {
    pub psi: usize,
    pub psi_degree: i64,
    pub divisor: String,
    pub ra: String,
    pub closed_forms: Vec<ClosedForm>,
    /// Every inertia group is a `p`-group, so `ra` must vanish.
    pub expect_zero: bool,
    /// Tame cover, `deg ψ = 1` and stalks `-1`: the tame closed form must apply.
    pub expect_tame_form: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteCase {
    pub id: String,
    pub family: String,
    pub q: u32,
    pub group_order: usize,
    pub tame: bool,
    pub inertia_wild_everywhere: bool,
    pub divisors: Vec<DivisorSummary>,
    pub random_divisors: Vec<DivisorSummary>,
    pub local_freeness_entries: usize,
    pub local_freeness: bool,
    pub ra_checks: Vec<RaCheck>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub cases: Vec<SuiteCase>,
    pub passed: usize,
    pub failed: usize,
}

/// FNV-1a, to derive a per-case stream from the seed and the case id.
fn case_seed(seed: u64, id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325u64 ^ seed, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

/// A rational point outside every ramified orbit, if any.
fn free_rational_point(cover: &P1Cover, rng: Option<&mut ChaCha8Rng>) -> Option<P1ClosedPoint> {
    let f = cover.field();
    let q = f.order();
    let mut candidates: Vec<P1ClosedPoint> =
        (0..q).map(|a| P1ClosedPoint::rational(f, a)).collect();
    candidates.push(P1ClosedPoint::Infinity);
    candidates.retain(|w| cover.ramified_orbit_of(w).is_none());
    match rng {
        Some(r) if !candidates.is_empty() => {
            Some(candidates[r.gen_range(0..candidates.len())].clone())
        }
        _ => candidates.into_iter().next(),
    }
}

fn add_orbit(d: &mut GDivisor, cover: &P1Cover, w: &P1ClosedPoint, n: i64) {
    for x in cover.orbit(w) {
        d.add_at(x, n);
    }
}

/// Stalks `k|P_w| - 1` at the ramified orbits and a multiple of one free orbit.
fn random_divisor(cover: &P1Cover, rng: &mut ChaCha8Rng) -> GDivisor {
    let mut d = GDivisor::zero();
    for o in cover.ramified() {
        let n = rng.gen_range(-1i64..=2) * o.wild.len() as i64 - 1;
        for w in &o.points {
            d.add_at(w.clone(), n);
        }
    }
    if let Some(w) = free_rational_point(cover, Some(rng)) {
        add_orbit(&mut d, cover, &w, rng.gen_range(-1i64..=2));
    }
    d
}

/// `π*O(k·w)(-Z_L)` for a free orbit `w`: stalks `-1` and a twist by `k` unramified points.
fn minus_ramification(cover: &P1Cover, k: i64) -> GDivisor {
    let mut d = cover.ramified_divisor(-1);
    if let Some(w) = free_rational_point(cover, None) {
        add_orbit(&mut d, cover, &w, k);
    }
    d
}

fn ra_checks(cover: &P1Cover, divisors: &[GDivisor]) -> Result<Vec<RaCheck>> {
    let data: &CoverData = cover.data();
    let psis = Psi::irreducibles(cover.group())?;
    let expect_zero = data.inertia_is_wild_everywhere();
    let mut out = Vec::new();
    for d in divisors {
        let bundle = cover.line_bundle(d)?;
        let pullback_shape = bundle
            .stalks
            .iter()
            .all(|s| s.exponents.iter().all(|&n| n == -1));
        for (i, psi) in psis.iter().enumerate() {
            let value = ra(data, &bundle, psi)?;
            let forms = closed_forms(data, &bundle, psi)?;
            let shown = value.to_string();
            let expect_tame_form = data.is_tame() && psi.degree() == 1 && pullback_shape;
            let tame_applies = forms.iter().any(|f| f.name == "tame" && f.value.is_some());
            let holds = forms
                .iter()
                .all(|f| f.value.as_ref().map_or(true, |v| *v == shown))
                && (!expect_zero || shown == "0")
                && (!expect_tame_form || tame_applies);
            out.push(RaCheck {
                psi: i,
                psi_degree: psi.degree(),
                divisor: d.to_string(),
                ra: shown,
                closed_forms: forms,
                expect_zero,
                expect_tame_form,
                holds,
            });
        }
    }
    Ok(out)
}

fn suite_case(case: &CorpusCase, seed: u64) -> Result<SuiteCase> {
    let base = run_case(case)?;
    let cover = build_cover(case.q, &case.generators)?;
    let mut rng = ChaCha8Rng::seed_from_u64(case_seed(seed, &case.id));
    let mut random_divisors = Vec::new();
    let mut ra_divisors: Vec<GDivisor> = (0..=1).map(|k| minus_ramification(&cover, k)).collect();
    for _ in 0..RANDOM_DIVISORS {
        let d = random_divisor(&cover, &mut rng);
        random_divisors.push(DivisorSummary::of(&verify_cover(&cover, &d, true)?));
        ra_divisors.push(d);
    }
    let ra_checks = ra_checks(&cover, &ra_divisors)?;
    let divisors: Vec<DivisorSummary> = base.divisors.iter().map(DivisorSummary::of).collect();
    let local_freeness = base
        .local_freeness
        .iter()
        .all(|e| e.projective == e.expected);
    let passed = base.passed
        && random_divisors.iter().all(|d| d.passed)
        && ra_checks.iter().all(|c| c.holds);
    Ok(SuiteCase {
        id: case.id.clone(),
        family: case.family.clone(),
        q: case.q,
        group_order: base.group_order,
        tame: cover.data().is_tame(),
        inertia_wild_everywhere: cover.data().inertia_is_wild_everywhere(),
        divisors,
        random_divisors,
        local_freeness_entries: base.local_freeness.len(),
        local_freeness,
        ra_checks,
        passed,
    })
}

/// The corpus, extra seeded divisors and the `ra` checks, ordered by case id.
pub fn suite(manifest: &CorpusManifest, seed: u64) -> Result<(Status, SuiteResult)> {
    check_manifest(manifest)?;
    let mut cases = manifest
        .cases
        .par_iter()
        .map(|c| suite_case(c, seed).map_err(|e| tag_case(e, &c.id)))
        .collect::<Result<Vec<_>>>()?;
    cases.sort_by(|a, b| a.id.cmp(&b.id));
    let passed = cases.iter().filter(|c| c.passed).count();
    let failed = cases.len() - passed;
    Ok((
        Status::of(failed == 0),
        SuiteResult {
            cases,
            passed,
            failed,
        },
    ))
}

fn tag_case(e: CliError, id: &str) -> CliError {
    match e {
        CliError::Hypothesis { assumption, detail } => CliError::Hypothesis {
            assumption,
            detail: format!("case {id}: {detail}"),
        },
        CliError::Invalid(m) => CliError::Invalid(format!("case {id}: {m}")),
        e => e,
    }
}

impl Table for SuiteResult {
    fn table(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .cases
            .iter()
            .map(|c| {
                let all = c.divisors.iter().chain(&c.random_divisors);
                let compared = all.clone().filter(|d| d.matches.is_some()).count();
                let matched = all.clone().filter(|d| d.matches == Some(true)).count();
                let ra_ok = c.ra_checks.iter().filter(|r| r.holds).count();
                vec![
                    c.id.clone(),
                    c.group_order.to_string(),
                    format!("{matched}/{compared}"),
                    c.local_freeness.to_string(),
                    format!("{ra_ok}/{}", c.ra_checks.len()),
                    c.passed.to_string(),
                ]
            })
            .collect();
        let mut out = columns(
            &[
                "case",
                "|G|",
                "oracle = engine",
                "local freeness",
                "ra checks",
                "passed",
            ],
            &rows,
        );
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}
