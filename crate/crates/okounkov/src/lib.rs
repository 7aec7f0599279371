//! Exact computation of graded value semigroups, Newton-Okounkov bodies
//! and the volume/degree limits they predict for graded linear series.
//!
//! The crate is organized bottom-up:
//!
//! * [`exactmath`] — arbitrary-precision integer lattices (HNF, SNF,
//!   saturation, subgroup indices) and rational elimination.
//! * [`semigroup`] — graded subsemigroups of `Z^d x N` and their
//!   invariants (slices, group closure, `m`, `q`, `ind`).
//! * [`hull`] — exact convex hulls, the Newton-Okounkov body and
//!   lattice-normalized volumes.
//! * [`series`] — polynomial graded linear series, the lexicographic
//!   flag valuation and value-semigroup extraction.
//! * [`limits`] — the limit-theorem verifiers: volume limits, degree
//!   limits, sumset bounds and the reduced multi-component decomposition.
//! * [`cli`] — JSON ingestion and report emission for the binary.

pub mod cli;
pub mod error;
pub mod exactmath;
pub mod hull;
pub mod limits;
pub mod semigroup;
pub mod series;

pub use error::{Error, Result};
pub use exactmath::{Int, Rat};
