//! Predicted `λ`-adic valuations of the normalized leading term `𝓛_U(A, ψ)`
//! of an abelian variety over a `G`-cover of curves, assembled from volume,
//! `lo`, regulator, `Sha`, torsion and component-group inputs, with checks
//! of the hypotheses the formula needs.

pub mod assumptions;
pub mod error;
pub mod predict;
pub mod regulator;
pub mod volume;

pub use assumptions::{
    assumption_check, is_pth_power_poly, j_in_pth_powers, j_in_pth_powers_over, AssumptionReport,
    AssumptionSheet, ConditionReport, JInvariant, PlaceSheet, Status, TorsionOrders,
};
pub use error::{BsdError, Result};
pub use predict::{
    lo_value, predict_coprime, predict_main, Breakdown, CoprimeData, GlobalArithmeticInput,
    GramEntry, Hypotheses, LieInput, LoInput, Prediction,
};
pub use regulator::{chi_bsd, gram_determinant, lambda_valuation, regulator_valuation};
pub use volume::{lie_degree_elliptic, p_exponent, vol_exponent, z2_correction, Z2Entry};
