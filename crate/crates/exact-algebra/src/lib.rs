//! Exact arithmetic: finite fields with compatible towers, polynomials and
//! matrices over them, cyclotomic numbers and the lift of roots of unity.

// row reductions index two rows of the same matrix at once
#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod cyclotomic;
pub mod cycmatrix;
pub mod error;
pub mod field;
pub mod lift;
pub mod matrix;
pub mod poly;
pub mod valuation;

pub use cyclotomic::{parse_rational, CycNumber};
pub use error::{AlgebraError, Result};
pub use field::{Fe, FieldElem, FieldElemSpec, FieldSpec, GaloisField};
pub use lift::{lift_exponent, reduce_root_of_unity, root_of_unity_lift};
pub use matrix::FqMatrix;
pub use poly::{Poly, PolyRing};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
