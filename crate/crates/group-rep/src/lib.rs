//! Finite groups given by multiplication tables, their p-regular classes,
//! matrix modules over finite fields, Brauer characters, projectivity and
//! classes in `K0(kG) ⊗ Q`.

pub mod characters;
pub mod classfn;
pub mod error;
pub mod group;
pub mod module;
pub mod subgroup;

pub use characters::{
    character_inner, irreducible_characters, regular_character, trivial_character, GroupCharacter,
};
pub use classfn::{
    pim_multiplicities, stable_equal, ClassFunction, ClassFunctionSpec, K0Class, Provenance,
};
pub use error::{GroupError, Result};
pub use group::{FiniteGroup, GroupSpec, MAX_GROUP_ORDER};
pub use module::MatrixModule;
pub use subgroup::Subgroup;
