//! Exact-arithmetic engine for second cohomology and central extensions of
//! Zinbiel algebras.
//!
//! Everything here works over the rationals or over a simple number field
//! `Q[x]/(m(x))`, so equality of subspaces, cocycle classes and structure
//! constants is decidable and exact. The crate is `no_std` (with `alloc`);
//! IO, file formats and the verification CLI live in the companion crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(any(feature = "std", test))]
extern crate std;

pub mod algebra;
pub mod autact;
pub mod catalog;
pub mod cohomology;
pub mod expr;
pub mod extensions;
pub mod linalg;
pub mod poly;
pub mod rng;
pub mod scalar;
pub mod textfmt;

pub use linalg::{Matrix, Subspace};
pub use scalar::{FieldElement, NumberField, Rational};
