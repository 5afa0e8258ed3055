//! Checks of the no-`ℓ`-torsion and ramification hypotheses from a data
//! sheet, including the `j ∉ L^p` criterion for ordinary elliptic curves.

use exact_algebra::{Fe, GaloisField, Poly, PolyRing};
use serde::{Deserialize, Serialize};

use crate::error::{BsdError, Result};

/// `j` as a quotient of polynomials over `F_q`, coefficients as field element
/// codes with the constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JInvariant {
    pub q: u32,
    pub numerator: Vec<Fe>,
    pub denominator: Vec<Fe>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionOrders {
    /// `|A(L)_tors|`
    pub mordell_weil: u64,
    /// `|A^t(L)_tors|`
    pub dual: u64,
}

/// A place `w ∈ Z_L` and what is known about `𝒜_L(k_w)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceSheet {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component_order: Option<u64>,
    /// `𝒜_L(k̄_w)` has no `ℓ`-torsion, as for supersingular reduction at `ℓ = p`.
    #[serde(default)]
    pub no_torsion_over_closure: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionSheet {
    pub ell: u32,
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion_orders: Option<TorsionOrders>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j_invariant: Option<JInvariant>,
    #[serde(default)]
    pub places: Vec<PlaceSheet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weakly_ramified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semistable: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tame_at_non_semistable: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub ell: u32,
    pub conditions: Vec<ConditionReport>,
    pub holds: bool,
}

/// Whether `f ∈ F_q[t]^p`. Every constant is a `p`-th power since `F_q` is
/// perfect, so this only asks for exponents divisible by `p`.
pub fn is_pth_power_poly(f: &Poly, p: u32) -> bool {
    f.coeffs()
        .iter()
        .enumerate()
        .all(|(i, &c)| c == 0 || i % p as usize == 0)
}

/// Whether `j = num/den ∈ F_q(t)^p`.
pub fn j_in_pth_powers(j: &JInvariant) -> Result<bool> {
    let field = p1_oracle::field_of_order(j.q)?;
    j_in_pth_powers_over(
        &field,
        &Poly::new(j.numerator.clone()),
        &Poly::new(j.denominator.clone()),
    )
}

pub fn j_in_pth_powers_over(field: &GaloisField, num: &Poly, den: &Poly) -> Result<bool> {
    if den.is_zero() {
        return Err(BsdError::Invalid("j has a zero denominator".into()));
    }
    if let Some(&c) = num
        .coeffs()
        .iter()
        .chain(den.coeffs())
        .find(|&&c| c >= field.order())
    {
        return Err(BsdError::Invalid(format!(
            "{c} is not an element of F_{}",
            field.order()
        )));
    }
    let ring = PolyRing::new(field);
    let g = ring.gcd(num, den);
    let (n, _) = ring.div_rem(num, &g)?;
    let (d, _) = ring.div_rem(den, &g)?;
    let p = field.characteristic();
    Ok(is_pth_power_poly(&n, p) && is_pth_power_poly(&d, p))
}

fn combine(statuses: impl IntoIterator<Item = Status>) -> Status {
    statuses
        .into_iter()
        .fold(Status::Pass, |acc, s| match (acc, s) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
            _ => Status::Pass,
        })
}

fn mordell_weil(sheet: &AssumptionSheet) -> ConditionReport {
    let ell = sheet.ell as u64;
    let (status, detail) = if let Some(t) = &sheet.torsion_orders {
        if t.mordell_weil % ell != 0 && t.dual % ell != 0 {
            (
                Status::Pass,
                format!("ℓ = {ell} divides neither torsion order"),
            )
        } else {
            (
                Status::Fail,
                format!(
                    "ℓ = {ell} divides |A(L)_tors| = {} or |A^t(L)_tors| = {}",
                    t.mordell_weil, t.dual
                ),
            )
        }
    } else if let (Some(j), true) = (&sheet.j_invariant, sheet.ell == sheet.p) {
        // a non-constant j forces ordinary reduction, and A^t ≅ A
        match j_in_pth_powers(j) {
            Ok(false) => (
                Status::Pass,
                "j ∉ L^p, so A(L) has no p-torsion".to_string(),
            ),
            Ok(true) => (
                Status::Inconclusive,
                "j ∈ L^p; the criterion does not apply".to_string(),
            ),
            Err(e) => (
                Status::Inconclusive,
                format!("j could not be evaluated: {e}"),
            ),
        }
    } else {
        (
            Status::Inconclusive,
            "no torsion orders and no applicable j-invariant".to_string(),
        )
    };
    ConditionReport {
        condition: "no ℓ-torsion in A(L) and A^t(L)".into(),
        status,
        detail,
    }
}

fn local(sheet: &AssumptionSheet) -> ConditionReport {
    let ell = sheet.ell as u64;
    let mut details = Vec::new();
    let status = combine(sheet.places.iter().map(|w| {
        let (s, d) = match (w.no_torsion_over_closure, w.component_order) {
            (true, _) => (Status::Pass, "no ℓ-torsion over the closure".to_string()),
            (false, Some(n)) if n % ell != 0 => (Status::Pass, format!("|𝒜_L(k_w)| = {n}")),
            (false, Some(n)) => (Status::Fail, format!("ℓ divides |𝒜_L(k_w)| = {n}")),
            (false, None) => (Status::Inconclusive, "order unknown".to_string()),
        };
        details.push(format!("{}: {d}", w.label));
        s
    }));
    let detail = if details.is_empty() {
        "no places listed".to_string()
    } else {
        details.join("; ")
    };
    ConditionReport {
        condition: "no ℓ-torsion in 𝒜_L(k_w) for w ∈ Z_L".into(),
        status,
        detail,
    }
}

fn at_p(sheet: &AssumptionSheet) -> ConditionReport {
    let condition = "weakly ramified, semistable, tame at non-semistable places".to_string();
    if sheet.ell != sheet.p {
        return ConditionReport {
            condition,
            status: Status::Pass,
            detail: "only required for ℓ = p".into(),
        };
    }
    // vacuous when there are no non-semistable places
    let tame = if sheet.semistable == Some(true) {
        Some(true)
    } else {
        sheet.tame_at_non_semistable
    };
    let flags = [
        ("weakly ramified", sheet.weakly_ramified),
        ("semistable", sheet.semistable),
        ("tame at non-semistable places", tame),
    ];
    let status = combine(flags.iter().map(|(_, f)| match f {
        Some(true) => Status::Pass,
        Some(false) => Status::Fail,
        None => Status::Inconclusive,
    }));
    let detail = flags
        .iter()
        .map(|(name, f)| {
            format!(
                "{name}: {}",
                f.map_or("unknown".to_string(), |b| b.to_string())
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    ConditionReport {
        condition,
        status,
        detail,
    }
}

/// Evaluates the three hypotheses from the sheet. Never fails; unknown data
/// make a condition inconclusive.
pub fn assumption_check(sheet: &AssumptionSheet) -> AssumptionReport {
    let conditions = vec![mordell_weil(sheet), local(sheet), at_p(sheet)];
    let holds = conditions.iter().all(|c| c.status == Status::Pass);
    AssumptionReport {
        ell: sheet.ell,
        conditions,
        holds,
    }
}
