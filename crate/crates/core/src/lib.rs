//! Exact arithmetic on integral lattices and the finite forms attached to them.
//!
//! The crate is `no_std` and needs only `alloc`. Arithmetic is on machine integers with
//! overflow checks enabled, so every reported value is exact or the computation aborts.

#![no_std]

extern crate alloc;

pub mod catalog;
pub mod checks;
pub mod classify;
pub mod delpezzo;
pub mod discriminant;
pub mod error;
pub mod geometry;
pub mod glue;
pub mod hassett;
pub mod lattice;
pub mod matrix;
pub mod report;
pub mod shortvec;

pub use discriminant::{DiscriminantForm, DiscriminantGroup, FiniteBilinearForm, FiniteQuadraticForm};
pub use error::{LatticeError, Result};
pub use lattice::{IntegralLattice, Invariants, Parity, Signature, Sublattice};
pub use matrix::{IntMatrix, Rat, RatVector};
