//! Equivariant BSD verification for the elliptic curve 11A1 over the
//! totally real S3 field cut out by x^3 - 4x + 1.
//!
//! The crate is layered bottom-up: [`exact_arith`] supplies rationals, finite
//! fields and certified balls; [`elliptic_curve`], [`number_field`] and
//! [`s3_algebra`] hold the arithmetic objects; [`modular_symbols`] and
//! [`lfunc_numeric`] produce L-values by exact and numeric routes; and
//! [`verifier`] assembles everything into per-prime verdicts.

pub mod elliptic_curve;
pub mod exact_arith;
pub mod lfunc_numeric;
pub mod modular_symbols;
pub mod number_field;
pub mod s3_algebra;
pub mod verifier;

mod config;
mod error;

pub use config::KeyValues;
pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/curve.md")]
    mod curve {}
    #[doc = include_str!("../../../book/src/field.md")]
    mod field {}
    #[doc = include_str!("../../../book/src/group_ring.md")]
    mod group_ring {}
    #[doc = include_str!("../../../book/src/modular.md")]
    mod modular {}
    #[doc = include_str!("../../../book/src/numeric.md")]
    mod numeric {}
    #[doc = include_str!("../../../book/src/verdicts.md")]
    mod verdicts {}
}
