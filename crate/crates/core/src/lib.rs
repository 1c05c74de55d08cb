//! Exact arithmetic for commutators and sums of commutators.
//!
//! Rings are described at runtime by a [`Ring`] handle and elements carry
//! canonical [`Value`]s, so equality is structural. The crate is `no_std`
//! and only needs `alloc`.
//!
//! * [`matrix`]: the trace criterion for matrix rings, two-commutator
//!   decompositions, corner combination and bounded-length sums.
//! * [`weyl`]: Weyl algebras, fresh-variable witnesses and the mod-`p`
//!   representation used to rule out single commutators.
//! * [`obstruction`]: the `3 x 3` square-zero counterexample and the
//!   exhaustive span-dimension check behind it.
//! * [`shift`]: lazy column-finite operators and the shift model for
//!   endomorphism rings of countable direct sums.

#![no_std]

extern crate alloc;

pub mod certificate;
pub mod error;
mod fmt;
pub mod linalg;
pub mod matrix;
pub mod obstruction;
pub mod random;
pub mod ring;
pub mod shift;
pub mod sum;
pub mod weyl;

pub use certificate::{Certificate, Verdict};
pub use error::{Error, Result};
pub use fmt::ValueDisplay;
pub use matrix::{IdempotentSplit, MatrixElement, TwoCommutators};
pub use ring::{Element, Monomial, Ring, RingKind, Value};
pub use shift::{FiniteOperator, LazyOperator};
pub use sum::{commutator, CommutatorSum};
pub use weyl::WeylMonomial;
