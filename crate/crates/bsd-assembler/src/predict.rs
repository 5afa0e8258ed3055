//! Assembly of `v_λ(𝓛_U(A, ψ))` from arithmetic inputs.

use equiv_rr_engine::{BundleData, CoverData, CoverSpec};
use exact_algebra::arith::prime_power;
use exact_algebra::{parse_rational, CycNumber};
use num_traits::ToPrimitive;
use p1_oracle::{build_cover, AffineMap, DivisorSpec, GDivisor};
use psi_part::{ra, LambdaSpec, Psi, PsiSpec};
use serde::{Deserialize, Serialize};

use crate::error::{BsdError, Result};
use crate::regulator::{gram_determinant, lambda_valuation};
use crate::volume::{lie_degree_elliptic, vol_exponent, z2_correction, Z2Entry};

/// `deg Lie 𝒜`, given directly or through the minimal discriminant of an
/// elliptic curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LieInput {
    Degree { degree: i64 },
    Discriminant { discriminant_degree: i64 },
}

impl LieInput {
    pub fn degree(&self) -> Result<i64> {
        match self {
            LieInput::Degree { degree } => Ok(*degree),
            LieInput::Discriminant {
                discriminant_degree,
            } => lie_degree_elliptic(*discriminant_degree),
        }
    }
}

/// Source of `log_p lo_{Z_L}(A, ψ) = ra_E(ψ)` for `E = Lie(𝒜_L)(−Z_L)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoInput {
    /// The exponent itself.
    Exponent(i64),
    /// Ramification data of `X_L → X` and the stalks of `E`.
    Cover {
        cover: CoverSpec,
        bundle: BundleData,
    },
    /// `L = F_q(x)` with `G` generated by affine maps, and `E = O(D)`.
    P1 {
        q: u32,
        generators: Vec<AffineMap>,
        divisor: DivisorSpec,
    },
}

/// An entry of the regulator Gram matrix: an integer, a rational written
/// `"a/b"`, or a cyclotomic number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GramEntry {
    Integer(i64),
    Rational(String),
    Cyclotomic(CycNumber),
}

impl GramEntry {
    pub fn value(&self) -> Result<CycNumber> {
        match self {
            GramEntry::Integer(n) => Ok(CycNumber::from_int(1, *n)),
            GramEntry::Rational(s) => Ok(CycNumber::from_rational(1, &parse_rational(s)?)),
            GramEntry::Cyclotomic(c) => Ok(c.clone()),
        }
    }
}

/// Declared hypotheses. An absent flag counts as not established.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypotheses {
    /// The `ℓ₀`-primary part of `Sha(A/L)` is finite for some `ℓ₀`.
    pub sha_finite: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weakly_ramified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tame_over_z2: Option<bool>,
    /// No `ℓ`-torsion in `A(L)`, `A^t(L)` and `𝒜_L(k_w)` for `w ∈ Z_L`, and
    /// for `ℓ = p` semistable reduction everywhere on `L`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub no_ell_torsion: Option<bool>,
}

/// Lengths entering the formula for `ℓ ∤ |G|`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoprimeData {
    /// `length [A(L)^∨_tors]_{ψ,λ}`
    pub torsion: i64,
    /// `length [A^t(L)_tors]_{ψ,λ}`
    pub dual_torsion: i64,
    /// `length [⊕_{w|v} 𝒜_L(k_w)^∨]_{ψ,λ}` for each `v ∈ Z`.
    #[serde(default)]
    pub local_components: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalArithmeticInput {
    /// `|k|` for the constant field `k` of `K`.
    pub constant_field_order: u64,
    pub group_order: u64,
    pub dim_a: i64,
    pub genus_k: i64,
    pub deg_z1: i64,
    #[serde(default)]
    pub z2: Vec<Z2Entry>,
    pub lie: LieInput,
    pub psi: PsiSpec,
    pub lambda: LambdaSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<LoInput>,
    pub regulator: Vec<Vec<GramEntry>>,
    pub r_alg: usize,
    pub sha_length: i64,
    pub hypotheses: Hypotheses,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coprime: Option<CoprimeData>,
}

/// Contributions to the exponent of `p_λ`, in the order they are summed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Breakdown {
    /// `deg ψ · v_λ(vol_{Z₁}(A/K))`
    pub volume: i64,
    /// `−deg ψ · v_λ(Π_{v∈Z₂} |Lie(𝒜_L)(k_ṽ)^{G_ṽ}|)`
    pub z2: i64,
    /// `v_λ(lo_{Z_L}(A, ψ))`
    pub lo: i64,
    /// `v_λ(Reg^ψ_λ)`
    pub regulator: i64,
    /// `−r_alg · v_λ(|G|)`
    pub group_power: i64,
    /// `length Sha^∨_{ψ,λ}`
    pub sha: i64,
    /// `−length [A(L)^∨_tors]_{ψ,λ}`
    pub torsion: i64,
    /// `−length [A^t(L)_tors]_{ψ,λ}`
    pub dual_torsion: i64,
    /// `Σ_v length [⊕_{w|v} 𝒜_L(k_w)^∨]_{ψ,λ}`
    pub local_components: i64,
}

impl Breakdown {
    pub fn total(&self) -> i64 {
        self.volume
            + self.z2
            + self.lo
            + self.regulator
            + self.group_power
            + self.sha
            + self.torsion
            + self.dual_torsion
            + self.local_components
    }
}

/// `𝓛_U(A, ψ)·O_{E,λ} = p_λ^exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub lambda: LambdaSpec,
    pub exponent: i64,
    pub breakdown: Breakdown,
    /// `p` and `s` with `|k| = p^s`.
    pub p: u32,
    pub s: u32,
    /// Exponent of `|k|` in the volume.
    pub vol_exponent: i64,
    /// Base-`p` exponent of the `Z₂` product.
    pub z2_exponent: i64,
    /// Base-`p` exponent of `lo`, when it was needed.
    pub lo_exponent: Option<i64>,
}

fn characteristic(input: &GlobalArithmeticInput) -> Result<(u32, u32)> {
    match prime_power(input.constant_field_order) {
        Some((p, s)) => Ok((p as u32, s)),
        None => Err(BsdError::Invalid(format!(
            "|k| = {} is not a prime power",
            input.constant_field_order
        ))),
    }
}

fn validate(input: &GlobalArithmeticInput) -> Result<()> {
    if input.group_order == 0 {
        return Err(BsdError::Invalid("|G| must be positive".into()));
    }
    if input.dim_a < 0 {
        return Err(BsdError::Negative("dim_a"));
    }
    if input.sha_length < 0 {
        return Err(BsdError::Negative("sha_length"));
    }
    if input.psi.degree < 1 {
        return Err(BsdError::Invalid(format!(
            "deg ψ = {} must be positive",
            input.psi.degree
        )));
    }
    if let Some(c) = &input.coprime {
        if c.torsion < 0 || c.dual_torsion < 0 || c.local_components.iter().any(|&x| x < 0) {
            return Err(BsdError::Negative("torsion and component lengths"));
        }
    }
    Ok(())
}

/// `ra_E(ψ)` for the Lie bundle `E = Lie(𝒜_L)(−Z_L)`.
pub fn lo_value(cover: &CoverData, bundle: &BundleData, psi: &Psi) -> Result<i64> {
    let r = ra(cover, bundle, psi)?;
    r.to_i64()
        .ok_or_else(|| BsdError::Invalid(format!("ra = {r} out of range")))
}

fn check_cover(cover: &CoverData, input: &GlobalArithmeticInput, require_weak: bool) -> Result<()> {
    if cover.group().order() as u64 != input.group_order {
        return Err(BsdError::Invalid(format!(
            "cover has group order {}, input declares {}",
            cover.group().order(),
            input.group_order
        )));
    }
    if cover.field_order() != input.constant_field_order {
        return Err(BsdError::Invalid(format!(
            "cover has constant field of order {}, input declares {}",
            cover.field_order(),
            input.constant_field_order
        )));
    }
    if require_weak {
        for pl in cover.places() {
            let d = pl.datum();
            if d.filtration().is_some()
                && !d
                    .is_weakly_ramified()
                    .map_err(equiv_rr_engine::EngineError::from)?
            {
                return Err(BsdError::hypothesis(
                    "weak ramification",
                    "the cover has a place with I_{w,2} ≠ 1",
                ));
            }
        }
    }
    Ok(())
}

fn resolve_lo(input: &GlobalArithmeticInput, require_weak: bool) -> Result<i64> {
    let lo = input
        .lo
        .as_ref()
        .ok_or_else(|| BsdError::Invalid("lo is required when ℓ = p".into()))?;
    match lo {
        LoInput::Exponent(exponent) => Ok(*exponent),
        LoInput::Cover { cover, bundle } => {
            let cover = CoverData::from_spec(cover)?;
            check_cover(&cover, input, require_weak)?;
            lo_value(&cover, bundle, &Psi::from_spec(cover.group(), &input.psi)?)
        }
        LoInput::P1 {
            q,
            generators,
            divisor,
        } => {
            if input.dim_a != 1 {
                return Err(BsdError::Invalid(
                    "a divisor on P¹ describes Lie(𝒜_L) only when dim A = 1".into(),
                ));
            }
            let c = build_cover(*q, generators)?;
            check_cover(c.data(), input, require_weak)?;
            let bundle = c.line_bundle(&GDivisor::from_spec(c.field(), divisor)?)?;
            lo_value(c.data(), &bundle, &Psi::from_spec(c.group(), &input.psi)?)
        }
    }
}

fn assemble(input: &GlobalArithmeticInput, coprime: bool) -> Result<Prediction> {
    validate(input)?;
    let (p, s) = characteristic(input)?;
    let lambda = input.lambda;
    let ell_is_p = lambda.ell == p;
    let h = &input.hypotheses;
    if !h.sha_finite {
        return Err(BsdError::hypothesis(
            "finiteness of Sha",
            "the ℓ₀-primary part of Sha(A/L) is not known to be finite",
        ));
    }
    if ell_is_p && !coprime {
        if h.weakly_ramified != Some(true) {
            return Err(BsdError::hypothesis(
                "weak ramification",
                "L/K is not known to be weakly ramified everywhere",
            ));
        }
        if h.tame_over_z2 != Some(true) {
            return Err(BsdError::hypothesis(
                "tameness over Z₂",
                "L/K is not known to be tame over Z₂",
            ));
        }
    }
    if !coprime && h.no_ell_torsion != Some(true) {
        return Err(BsdError::hypothesis(
            "no ℓ-torsion",
            "A(L), A^t(L) or some 𝒜_L(k_w) may have ℓ-torsion; use the coprime formula if ℓ ∤ |G|",
        ));
    }

    let deg_psi = input.psi.degree;
    let vol = vol_exponent(
        input.dim_a,
        input.genus_k,
        input.deg_z1,
        input.lie.degree()?,
    );
    let z2 = z2_correction(&input.z2, p)?;
    let e = lambda.ramification as i64;
    let mut b = Breakdown::default();
    let mut lo_exponent = None;
    if ell_is_p {
        let lo = resolve_lo(input, !coprime)?;
        lo_exponent = Some(lo);
        b.volume = deg_psi * vol * s as i64 * e;
        b.z2 = -deg_psi * z2 * e;
        b.lo = lo * e;
    }
    let gram = input
        .regulator
        .iter()
        .map(|row| row.iter().map(GramEntry::value).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    b.regulator = lambda_valuation(&gram_determinant(&gram, input.r_alg)?, &lambda)?;
    b.group_power = -(input.r_alg as i64) * lambda.valuation(input.group_order);
    b.sha = input.sha_length;
    if coprime {
        let c = input.coprime.clone().unwrap_or_default();
        b.torsion = -c.torsion;
        b.dual_torsion = -c.dual_torsion;
        b.local_components = c.local_components.iter().sum();
    }
    Ok(Prediction {
        lambda,
        exponent: b.total(),
        breakdown: b,
        p,
        s,
        vol_exponent: vol,
        z2_exponent: z2,
        lo_exponent,
    })
}

/// `v_λ(𝓛_U(A, ψ))` under the no-`ℓ`-torsion hypotheses, and for `ℓ = p`
/// weak ramification everywhere with tameness over `Z₂`.
pub fn predict_main(input: &GlobalArithmeticInput) -> Result<Prediction> {
    assemble(input, false)
}

/// `v_λ(𝓛_U(A, ψ))` for `ℓ ∤ |G|`, with torsion and component-group terms.
pub fn predict_coprime(input: &GlobalArithmeticInput) -> Result<Prediction> {
    if input.lambda.valuation(input.group_order) != 0 {
        return Err(BsdError::hypothesis(
            "ℓ ∤ |G|",
            format!(
                "ℓ = {} divides |G| = {}",
                input.lambda.ell, input.group_order
            ),
        ));
    }
    assemble(input, true)
}
