//! Duality between star-connected and plus-connected components of occupied
//! squares on the unit-square tiling of the plane.
//!
//! A configuration marks each lattice square occupied or vacant. Two squares
//! are *plus*-adjacent when they share an edge and *star*-adjacent when they
//! share at least a corner. This crate computes, for a finite component of
//! occupied squares:
//!
//! * its outermost boundary (the edges not strictly enclosed by any cycle of
//!   the component's corner graph), traced as one or more lattice cycles;
//! * the surrounding cycle of vacant squares predicted by duality — a
//!   plus-connected cycle around a star component ([`duality::dual_plus_cycle`])
//!   and a star-connected cycle around a plus component
//!   ([`duality::dual_star_cycle`]);
//! * property reports certifying every claimed invariant of those objects
//!   against independent brute-force oracles ([`verify`]).
//!
//! The [`cli`] module backs the `perc-duality` binary: config generation,
//! text/JSON formats, SVG rendering, and a randomized verification driver.

pub mod boundary;
pub mod cli;
pub mod duality;
pub mod grid;
pub mod verify;

mod error;

pub use error::{Error, Result};
