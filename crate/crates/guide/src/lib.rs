//! Compiles the code listings of `book/src` as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/exact-algebra.md")]
pub mod exact_algebra {}
#[doc = include_str!("../../../book/src/number-fields.md")]
pub mod number_fields {}
#[doc = include_str!("../../../book/src/cyclotomic.md")]
pub mod cyclotomic {}
#[doc = include_str!("../../../book/src/ideals.md")]
pub mod ideals {}
#[doc = include_str!("../../../book/src/orbits.md")]
pub mod orbits {}
#[doc = include_str!("../../../book/src/certification.md")]
pub mod certification {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
