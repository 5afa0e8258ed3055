//! Ground truth for equivariant Riemann–Roch on `P¹`: covers `P¹ → P¹/G`
//! for groups of affine maps over `F_q`, their ramification data, the
//! cohomology of `G`-stable divisors as explicit `kG`-modules, and the
//! comparison with `equiv-rr-engine`.

pub mod affine;
pub mod cohomology;
pub mod corpus;
pub mod cover;
pub mod divisor;
pub mod error;
pub mod local;
pub mod verify;

pub use affine::{field_of_order, AffineMap};
pub use cohomology::{
    h0_with_action, h1_with_action, rr_space, CohomologyModule, RationalFunction,
};
pub use corpus::{
    local_freeness_table, place_summaries, run_case, CaseReport, CorpusCase, CorpusManifest,
    DivisorCase, LocalFreenessEntry, PlaceSummary, MANIFEST_VERSION,
};
pub use cover::{build_cover, P1Cover, RamifiedOrbit};
pub use divisor::{DivisorSpec, GDivisor, P1ClosedPoint, PointSpec};
pub use error::{OracleError, Result};
pub use local::{
    cotangent_character, lattice_quotient, local_freeness_check, lower_filtration, lower_index,
};
pub use verify::{
    p_regular_cyclic_subgroups, verify_cover, verify_cover_shifted, ClassDiff, EngineComparison,
    MackeyEntry, StalkShift, VerifyReport,
};
