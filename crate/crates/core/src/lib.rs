//! Representation zeta polynomials of `GL_n` over length-two local rings.
//!
//! The crate has two halves that check each other. The symbolic half
//! ([`polyq`], [`typegen`], [`glzeta`]) assembles zeta polynomials in `q`
//! from similarity-class types; the concrete half ([`rings`], [`matrices`],
//! [`canonical`], [`oracle`]) builds the finite groups themselves and
//! computes their character degrees.

pub mod error;
pub mod partition;
pub mod polyq;
pub mod rings;
pub mod matrices;
pub mod canonical;
pub mod typegen;
pub mod oracle;
pub mod glzeta;

pub use error::ParseError;
pub use partition::Partition;
pub use polyq::{DegreeMultiset, PolyQ, ZetaSum, ZetaTerm};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
pub mod chapter0 {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod chapter1 {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/rings.md")]
pub mod chapter2 {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/types.md")]
pub mod chapter3 {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/zeta.md")]
pub mod chapter4 {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/oracle.md")]
pub mod chapter5 {}
