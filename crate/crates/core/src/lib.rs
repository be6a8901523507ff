//! Exact arithmetic for orders over `Z`.
//!
//! Given an order `A` (from a monic polynomial or a multiplication table) the
//! crate computes the trace dual `A†`, the finite quotient `A†/A` together with
//! its `Q/Z`-valued trace pairing, and the integral closure of `A` one prime at
//! a time. Each local closure is either certified by a structural criterion on
//! the pairing (tameness plus anisotropy) or produced by the radical-idealizer
//! fixpoint, which is also used as an independent cross-check.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod closure;
pub mod error;
pub mod factor;
pub mod form;
pub mod linalg;
pub mod localize;
pub mod order;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
