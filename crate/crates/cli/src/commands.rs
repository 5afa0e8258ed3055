//! `euler-char`, `ra`, `predict` and `check-assumptions`.

use bsd_assembler::{
    assumption_check, predict_coprime, predict_main, AssumptionReport, AssumptionSheet,
    GlobalArithmeticInput, LoInput, Prediction,
};
use clap::ValueEnum;
use equiv_rr_engine::{euler_characteristic, BundleData, CoverData, CoverSpec};
use exact_algebra::BigInt;
use group_rep::ClassFunctionSpec;
use p1_oracle::{build_cover, verify_cover, AffineMap, ClassDiff, DivisorSpec, GDivisor};
use psi_part::{
    psi_euler_exponent, ra, ra_closed_simple, ra_closed_tame, ra_exact, ra_pullback_twist,
    rho_psi_valuation, LambdaSpec, Psi, PsiError, PsiSpec,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::report::{columns, Status, Table};

pub const EULER_FORMULAS: &[&str] = &[
    "χ_{kG}(E) = χ_k(E^G)·[kG] − rk(E)·[N(π)] + [W_G(E)]",
    "[N(π)] and [W_G(E)] are sums over the ramified places of classes induced from the inertia groups",
];

pub const RA_FORMULAS: &[&str] = &[
    "ra_E(ψ) = (1/|G|) Σ_w Σ_i ( −|P_w| Σ_{j=1}^{|C_w|−1} j·m_{ψ,w}(−j) + |I_w| Σ_{j=1}^{l_{w,i}} m_{ψ,w}(j) )",
    "v_λ(ρ^ψ(χ^G_ℓ(E))) = −e_λ·([k:F_p]·deg ψ·χ_k(E^G) + ra_E(ψ)) for ℓ = p, and 0 otherwise",
];

pub const PREDICT_FORMULAS: &[&str] = &[
    "𝓛_U(A,ψ)·O_{E,λ} = p_λ^n",
    "n = deg ψ·v_λ(vol_{Z₁}(A/K)) − deg ψ·v_λ(Π_{Z₂} |Lie(𝒜_L)(k_ṽ)^{G_ṽ}|) + e_λ·lo + v_λ(det Gram^ψ) − r·v_λ(|G|) + length Sha",
    "vol_{Z₁}(A/K) = |k|^{dim A·(1 − g_K − deg Z₁) + deg Lie(𝒜)}, and the volume, Z₂ and lo terms vanish for ℓ ≠ p",
    "coprime mode adds Σ_v length[⊕_{w|v} 𝒜_L(k_w)^∨]_{ψ,λ} − length[A(L)_tors]_{ψ,λ} − length[A^t(L)_tors]_{ψ,λ}",
];

pub const ASSUMPTION_FORMULAS: &[&str] = &[
    "ℓ ∤ |A(L)_tors|·|A^t(L)_tors|",
    "ℓ ∤ |𝒜_L(k_w)| for w ∈ Z_L",
    "for ℓ = p: j(A) ∉ L^p, or semistable with tame ramification at the non-semistable places",
];

/// A `G`-equivariant line bundle on `P¹` given by a divisor, or an abstract
/// cover with its bundle data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BundleSource {
    P1 {
        q: u32,
        generators: Vec<AffineMap>,
        divisor: DivisorSpec,
    },
    Cover {
        cover: CoverSpec,
        bundle: BundleData,
    },
}

/// The source as the engine sees it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResolvedSource {
    pub cover: CoverSpec,
    pub bundle: BundleData,
}

pub struct Resolved {
    pub cover: CoverData,
    pub bundle: BundleData,
    /// The cover and divisor on `P¹`, when given that way.
    pub p1: Option<(p1_oracle::P1Cover, GDivisor)>,
}

impl Resolved {
    pub fn spec(&self) -> ResolvedSource {
        ResolvedSource {
            cover: self.cover.spec(),
            bundle: self.bundle.clone(),
        }
    }
}

pub fn resolve(source: &BundleSource) -> Result<Resolved> {
    match source {
        BundleSource::P1 {
            q,
            generators,
            divisor,
        } => {
            let c = build_cover(*q, generators)?;
            let d = GDivisor::from_spec(c.field(), divisor)?;
            let bundle = c.line_bundle(&d)?;
            Ok(Resolved {
                cover: c.data().clone(),
                bundle,
                p1: Some((c, d)),
            })
        }
        BundleSource::Cover { cover, bundle } => Ok(Resolved {
            cover: CoverData::from_spec(cover)?,
            bundle: bundle.clone(),
            p1: None,
        }),
    }
}

/// The case input together with what it resolves to.
#[derive(Debug, Serialize)]
pub struct WithResolved<'a, T: Serialize> {
    pub case: &'a T,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolved: Option<ResolvedSource>,
}

fn integer(n: &BigInt) -> String {
    n.to_string()
}

// ---------------------------------------------------------------- euler-char

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleCheck {
    pub h0_dim: usize,
    pub h1_dim: usize,
    pub oracle: ClassFunctionSpec,
    pub matches: bool,
    pub diff: Vec<ClassDiff>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EulerResult {
    pub class: ClassFunctionSpec,
    pub dimension: String,
    pub invariant_chi: i64,
    pub n_pi: ClassFunctionSpec,
    pub w_g: ClassFunctionSpec,
    pub stalk_shape_assumed: bool,
    /// Multiplicities of the projective indecomposables over `k̄`, when available.
    pub multiplicities: Option<Vec<String>>,
    /// Explicit cohomology on `P¹`, for `p1` sources.
    pub oracle: Option<OracleCheck>,
}

pub fn euler_char(r: &Resolved) -> Result<(Status, EulerResult)> {
    let e = euler_characteristic(&r.cover, &r.bundle)?;
    let oracle = match &r.p1 {
        Some((c, d)) => {
            let v = verify_cover(c, d, true)?;
            let cmp = v.engine.ok_or_else(|| {
                CliError::Invalid("the oracle skipped the engine comparison".into())
            })?;
            Some(OracleCheck {
                h0_dim: v.h0_dim,
                h1_dim: v.h1_dim,
                oracle: v.oracle,
                matches: cmp.matches,
                diff: cmp.diff,
            })
        }
        None => None,
    };
    let ok = oracle.as_ref().map_or(true, |o| o.matches);
    Ok((
        Status::of(ok),
        EulerResult {
            class: e.class.function.spec(),
            dimension: e.class.dimension().to_string(),
            invariant_chi: e.invariant_chi,
            n_pi: e.n_pi.function.spec(),
            w_g: e.w_g.function.spec(),
            stalk_shape_assumed: e.stalk_shape_assumed,
            multiplicities: e.multiplicities.map(|m| m.iter().map(integer).collect()),
            oracle,
        },
    ))
}

fn class_rows(spec: &ClassFunctionSpec, others: &[(&str, &ClassFunctionSpec)]) -> Vec<Vec<String>> {
    spec.class_representatives
        .iter()
        .enumerate()
        .map(|(i, rep)| {
            let mut row = vec![rep.clone(), spec.values[i].to_string()];
            row.extend(others.iter().map(|(_, o)| o.values[i].to_string()));
            row
        })
        .collect()
}

impl Table for EulerResult {
    fn table(&self) -> String {
        let mut header = vec!["class", "χ_{kG}(E)", "N(π)", "W_G(E)"];
        let mut others = vec![("N", &self.n_pi), ("W", &self.w_g)];
        if let Some(o) = &self.oracle {
            header.push("H⁰ − H¹");
            others.push(("oracle", &o.oracle));
        }
        let mut out = format!("dim {}  χ_k(E^G) {}\n", self.dimension, self.invariant_chi);
        out.push_str(&columns(&header, &class_rows(&self.class, &others)));
        if let Some(m) = &self.multiplicities {
            out.push_str(&format!("projective multiplicities: {}\n", m.join(" ")));
        }
        out
    }
}

// ---------------------------------------------------------------------- ra

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RaInput {
    pub source: BundleSource,
    /// Defaults to every irreducible character.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<PsiSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<LambdaSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    pub name: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub not_applicable: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RaEntry {
    pub psi: PsiSpec,
    pub ra: String,
    pub ra_exact: String,
    pub euler_exponent: String,
    pub closed_forms: Vec<ClosedForm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho_valuation: Option<String>,
    /// Every applicable closed form equals `ra`.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RaResult {
    pub entries: Vec<RaEntry>,
}

/// A closed form for `ra`, or why it does not apply. Only hypothesis
/// failures count as not applicable.
pub fn closed_form(name: &'static str, v: psi_part::Result<BigInt>) -> Result<ClosedForm> {
    match v {
        Ok(n) => Ok(ClosedForm {
            name,
            value: Some(integer(&n)),
            not_applicable: None,
        }),
        Err(PsiError::HypothesisViolated(why)) => Ok(ClosedForm {
            name,
            value: None,
            not_applicable: Some(why),
        }),
        Err(e) => Err(e.into()),
    }
}

pub fn closed_forms(cover: &CoverData, bundle: &BundleData, psi: &Psi) -> Result<Vec<ClosedForm>> {
    Ok(vec![
        closed_form("pullback_twist", ra_pullback_twist(cover, bundle, psi))?,
        closed_form("tame", ra_closed_tame(cover, bundle, psi))?,
        closed_form("simple", ra_closed_simple(cover, bundle, psi))?,
    ])
}

pub fn ra_entry(r: &Resolved, psi: &Psi, lambda: Option<&LambdaSpec>) -> Result<RaEntry> {
    let value = ra(&r.cover, &r.bundle, psi)?;
    let forms = closed_forms(&r.cover, &r.bundle, psi)?;
    let shown = integer(&value);
    let consistent = forms
        .iter()
        .all(|f| f.value.as_ref().map_or(true, |v| *v == shown));
    Ok(RaEntry {
        psi: psi.spec(),
        ra: shown,
        ra_exact: ra_exact(&r.cover, &r.bundle, psi)?.to_string(),
        euler_exponent: integer(&psi_euler_exponent(&r.cover, &r.bundle, psi)?),
        closed_forms: forms,
        rho_valuation: match lambda {
            Some(l) => Some(integer(&rho_psi_valuation(&r.cover, &r.bundle, psi, l)?)),
            None => None,
        },
        consistent,
    })
}

pub fn ra_command(r: &Resolved, input: &RaInput) -> Result<(Status, RaResult)> {
    r.bundle.validate(&r.cover)?;
    let g = r.cover.group();
    let psis = match &input.psi {
        Some(specs) => specs
            .iter()
            .map(|s| Psi::from_spec(g, s))
            .collect::<psi_part::Result<Vec<_>>>()?,
        None => Psi::irreducibles(g)?,
    };
    let entries = psis
        .par_iter()
        .map(|psi| ra_entry(r, psi, input.lambda.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    let ok = entries.iter().all(|e| e.consistent);
    Ok((Status::of(ok), RaResult { entries }))
}

fn psi_label(p: &PsiSpec) -> String {
    p.values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl Table for RaResult {
    fn table(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|e| {
                let mut row = vec![
                    format!("({})", psi_label(&e.psi)),
                    e.ra.clone(),
                    e.euler_exponent.clone(),
                ];
                row.extend(
                    e.closed_forms
                        .iter()
                        .map(|f| f.value.clone().unwrap_or_else(|| "-".into())),
                );
                row.push(e.rho_valuation.clone().unwrap_or_else(|| "-".into()));
                row
            })
            .collect();
        columns(
            &[
                "ψ",
                "ra",
                "[k:F_p]deg ψ χ(E^G) + ra",
                "pullback",
                "tame",
                "simple",
                "v_λ(ρ)",
            ],
            &rows,
        )
    }
}

// ------------------------------------------------------------------ predict

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Main,
    Coprime,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictEntry {
    pub psi: PsiSpec,
    pub prediction: Prediction,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictResult {
    pub mode: Mode,
    pub predictions: Vec<PredictEntry>,
}

fn predict_one(input: &GlobalArithmeticInput, mode: Mode) -> Result<Prediction> {
    Ok(match mode {
        Mode::Main => predict_main(input)?,
        Mode::Coprime => predict_coprime(input)?,
    })
}

/// The irreducible characters of the group carried by the `lo` source.
fn source_irreducibles(input: &GlobalArithmeticInput) -> Result<Vec<PsiSpec>> {
    let group = match &input.lo {
        Some(LoInput::Cover { cover, .. }) => CoverData::from_spec(cover)?.group().clone(),
        Some(LoInput::P1 { q, generators, .. }) => build_cover(*q, generators)?.group().clone(),
        _ => {
            return Err(CliError::Invalid(
                "--all-psi needs a cover or p1 source for lo".into(),
            ))
        }
    };
    Ok(Psi::irreducibles(&group)?.iter().map(Psi::spec).collect())
}

/// One prediction, or one for every irreducible `ψ` of the cover, computed
/// in parallel and listed in class order.
pub fn predict(
    input: &GlobalArithmeticInput,
    mode: Mode,
    all_psi: bool,
) -> Result<(Status, PredictResult)> {
    let psis = if all_psi {
        source_irreducibles(input)?
    } else {
        vec![input.psi.clone()]
    };
    let predictions = psis
        .into_par_iter()
        .map(|psi| {
            let mut i = input.clone();
            i.psi = psi.clone();
            Ok(PredictEntry {
                psi,
                prediction: predict_one(&i, mode)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((Status::Ok, PredictResult { mode, predictions }))
}

impl Table for PredictResult {
    fn table(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .predictions
            .iter()
            .map(|e| {
                let b = &e.prediction.breakdown;
                vec![
                    format!("({})", psi_label(&e.psi)),
                    e.prediction.exponent.to_string(),
                    b.volume.to_string(),
                    b.z2.to_string(),
                    b.lo.to_string(),
                    b.regulator.to_string(),
                    b.group_power.to_string(),
                    b.sha.to_string(),
                    (b.local_components - b.torsion - b.dual_torsion).to_string(),
                ]
            })
            .collect();
        columns(
            &[
                "ψ",
                "exponent",
                "volume",
                "Z₂",
                "lo",
                "regulator",
                "|G|^r",
                "Sha",
                "local − torsion",
            ],
            &rows,
        )
    }
}

// -------------------------------------------------------- check-assumptions

pub fn check_assumptions(sheet: &AssumptionSheet) -> Result<(Status, AssumptionReport)> {
    Ok((Status::Ok, assumption_check(sheet)))
}

impl Table for AssumptionReport {
    fn table(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .conditions
            .iter()
            .map(|c| {
                let s = serde_json::to_value(c.status)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string));
                vec![s.unwrap_or_default(), c.condition.clone(), c.detail.clone()]
            })
            .collect();
        let mut out = columns(&["status", "condition", "detail"], &rows);
        out.push_str(&format!(
            "ℓ = {}: assumptions {}\n",
            self.ell,
            if self.holds {
                "hold"
            } else {
                "not established"
            }
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_algebra::CycNumber;

    fn sign_source(infinity: i64, zero: i64) -> BundleSource {
        serde_json::from_value(serde_json::json!({
            "p1": {
                "q": 5, "generators": [{"a": 4, "b": 0}],
                "divisor": {"infinity": infinity, "points": [{"poly": [0, 1], "mult": zero}]}
            }
        }))
        .unwrap()
    }

    #[test]
    fn euler_char_agrees_with_the_oracle() {
        let r = resolve(&sign_source(-1, -1)).unwrap();
        let (status, e) = euler_char(&r).unwrap();
        assert_eq!(status, Status::Ok);
        assert!(e.oracle.unwrap().matches);
        assert_eq!(e.invariant_chi, -1);
    }

    #[test]
    fn stalk_condition_failures_are_hypothesis_errors() {
        // the Artin–Schreier cover with n = -2 at ∞
        let src: BundleSource = serde_json::from_value(serde_json::json!({
            "p1": {"q": 5, "generators": [{"a": 1, "b": 1}], "divisor": {"infinity": -2}}
        }))
        .unwrap();
        let r = resolve(&src).unwrap();
        assert_eq!(
            euler_char(&r).unwrap_err().exit_code(),
            crate::error::EXIT_HYPOTHESIS
        );
    }

    #[test]
    fn ra_on_the_sign_cover() {
        let input = RaInput {
            source: sign_source(-1, -1),
            psi: None,
            lambda: Some(LambdaSpec::new(5, 1).unwrap()),
        };
        let r = resolve(&input.source).unwrap();
        let (status, res) = ra_command(&r, &input).unwrap();
        assert_eq!(status, Status::Ok);
        let ras: Vec<&str> = res.entries.iter().map(|e| e.ra.as_str()).collect();
        assert_eq!(ras, ["0", "1"]);
        assert!(res
            .entries
            .iter()
            .all(|e| e.closed_forms.iter().all(|f| f.value.is_some())));
        // stalk -3 at ∞: the closed forms do not apply but ra does
        let r = resolve(&sign_source(-3, -1)).unwrap();
        let sign = Psi::new(
            r.cover.group(),
            vec![CycNumber::one(1), CycNumber::from_int(1, -1)],
        )
        .unwrap();
        let e = ra_entry(&r, &sign, None).unwrap();
        assert!(e.closed_forms.iter().all(|f| f.not_applicable.is_some()));
        assert!(e.consistent);
    }
}
