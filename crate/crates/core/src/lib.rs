//! Exact-arithmetic engine for divisor stability on weighted multigraphs and
//! metric graphs: stability slack computations, polystabilization, stability
//! posets, and the polyhedral cells that assemble into tropical Jacobians.
//!
//! Everything is computed over arbitrary-precision rationals; no floating
//! point is used anywhere. The crate is `no_std` (with `alloc`): all IO,
//! serialization and CLI plumbing lives in the companion `tropjac` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod curve;
pub mod geometry;
pub mod graph;
pub mod jacobian;
pub mod linalg;
pub mod polystab;
pub mod rat;
pub mod stability;

mod error;

pub use error::Error;

/// Arbitrary-precision rational, the only scalar used by the engine.
pub type Rat = num_rational::BigRational;

/// Convenience result alias.
pub type Result<T> = core::result::Result<T, Error>;
