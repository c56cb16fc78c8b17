//! Exact combinatorics around the Cox category of a complete toric variety.
//!
//! All arithmetic is over `BigInt` and `BigRational`. The usual path is
//! [`input::ToricInput`] to [`report::Context`], then the module for the
//! object you want:
//!
//! - [`symmetry`]: lattice automorphisms permuting the rays
//! - [`bondal`]: strata of the torus `M_ℝ/M` and the collection `Θ`
//! - [`coxcat`]: Hom dimensions, orders and decompositions of `Θ`
//! - [`gkz`]: chambers of the secondary fan
//! - [`refine`]: an equivariant simplicial refinement of the chamber fans
//! - [`hhl`]: complexes of `Θ`-sums attached to a sublattice
//! - [`report`], [`svg`]: what the command-line tool prints

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod linalg;
pub mod lp;
pub mod snf;
pub mod class_group;
pub mod polytope;
pub mod rays;
pub mod cone;
pub mod fan;
pub mod symmetry;
pub mod arrangement;
pub mod input;
pub mod bondal;
pub mod coxcat;
pub mod hhl;
pub mod gkz;
pub mod refine;
pub mod report;
pub mod svg;
