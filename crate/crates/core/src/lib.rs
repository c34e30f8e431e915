//! Exact-arithmetic homological algebra for graded cocommutative coalgebras.
//!
//! The crate computes the invariants that control realization questions for
//! unstable coalgebras over the mod-2 Steenrod algebra (and rationally):
//! cohomotopy of truncated cosimplicial objects, cotensor products and Cotor
//! via cofree resolutions, Künneth spectral sequences of double complexes,
//! coabelianization and derivations, twisted Eilenberg-MacLane objects,
//! André-Quillen cohomology groups, and the stagewise obstruction tower.
//!
//! All arithmetic is exact: scalars are bits over F2 (bit-packed rows) or
//! reduced arbitrary-precision rationals over Q. Every equality asserted by
//! this crate is bit-exact; there are no tolerances anywhere.
//!
//! The crate is `no_std` (alloc only). IO, file formats and the command-line
//! driver live in the companion `ucoalg` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod aq;
pub mod coalg;
pub mod cosimpl;
pub mod cotor;
pub mod error;
pub mod linalg;
pub mod obstruction;
pub mod specseq;
pub mod steenrod;

pub use error::Error;
pub use linalg::{Field, Matrix, Scalar};
pub use linalg::graded::{BiDegree, Degree, GradedLinearMap, GradedVectorSpace};
