//! The `ψ`-isotypic part of equivariant Euler characteristics: eigenspace
//! multiplicities of `θ_w` on `T̄_ψ`, the local term `ra_E(ψ)` with its closed
//! forms, and the `λ`-adic valuations of `ρ^ψ`.

pub mod error;
pub mod global;
pub mod local;
pub mod psi;

pub use error::{PsiError, Result};
pub use global::{
    psi_euler_exponent, psi_multiplicity, psi_torsion_valuation, ra, ra_closed_simple,
    ra_closed_tame, ra_exact, ra_pullback_twist, rho_psi_valuation, torsion_euler_valuation,
};
pub use local::{m_psi_w, theta_multiplicities};
pub use psi::{LambdaSpec, Psi, PsiSpec};
