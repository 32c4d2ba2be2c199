//! Exact self-avoiding walk enumeration on infinite, locally finite graphs,
//! connective-constant estimation, and bounded checks of the combinatorial
//! machinery behind the bounds `sqrt(D-1) <= mu <= D-1` for `D`-regular graphs.
//!
//! The crate is organised by concern:
//!
//! * [`graph`]: neighbor-rule graphs, the built-in families and finite balls.
//! * [`enumerate`]: exact (arbitrary precision) SAW counting.
//! * [`estimate`]: Fekete upper bounds, growth-rate extrapolation, bound checks.
//! * [`pi`]: red/blue edge classification and condition-Π certification.
//! * [`proof`]: the branch-counting lemma, strict upper bound cutoffs,
//!   edge-disjoint paths on balls, and inequality suites.

#![forbid(unsafe_code)]

pub mod enumerate;
mod error;
pub mod estimate;
pub mod graph;
pub mod numeric;
pub mod pi;
pub mod proof;

pub use error::{Error, Result};
