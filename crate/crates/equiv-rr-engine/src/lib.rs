//! Equivariant Riemann–Roch for weakly ramified `G`-covers `X_L → X` of
//! curves over a finite field `k`: the classes `[N(π)]` and `[W_G(E)]`, the
//! Euler characteristic `χ_{kG}(E)` in `K0(kG) ⊗ Q`, and the consistency
//! checks that surround it (degree identity, Mackey restriction, Köck's
//! Brauer-character formula).

pub mod cover;
pub mod error;
pub mod formula;
pub mod kock;

pub use cover::{BundleData, CoverData, CoverSpec, PlaceSpec, RamifiedPlace};
pub use error::{EngineError, Result};
pub use formula::{
    bundle_degree, chi_hrr, degree_identity, euler_char, euler_characteristic, expected_dimension,
    mackey_check, mackey_compare, n_pi, pullback_twist_chi, ramification_degree, w_g,
    DegreeIdentity, EulerCharacteristic, MackeyReport,
};
pub use kock::{corrected_coefficient, kock_cross_check, KockReport};
