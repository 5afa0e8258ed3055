//! Local ramification data at ramified places of Galois covers of curves:
//! the structure `I_w = P_w ⋊ C_w`, weak ramification, exponent arithmetic
//! for bundle stalks, and the projective modules `M_w(j)`.

pub mod datum;
pub mod error;
pub mod exponents;
pub mod mw;

pub use datum::{is_weakly_ramified, LocalDatum, LocalDatumSpec};
pub use error::{RamificationError, Result};
pub use exponents::{
    check_ew, d_prime, descent_exponent, l_exponent, l_exponents, l_from_neron, BundleStalk,
};
pub use mw::{
    decompose_local, inflated_line_class, line_class, mw_class_over, mw_module,
    mw_projective_class, tame_exponents, tame_in_inertia,
};
