//! Exact incidence toolkit for point configurations in real projective d-space.
//!
//! The crate constructs classical extremal point families (regular polygons with
//! their directions, prisms, moment-curve sets, cubes), computes their exact
//! hyperplane secant profiles (the vector of i-secant counts, in particular the
//! number of *ordinary* hyperplanes meeting the set in exactly d points), and
//! derives lower/upper bounds on the minimum ordinary-hyperplane count e_d(n),
//! including a generator for the reference table of small values.
//!
//! Modules:
//! - [`exact_linalg`]: arbitrary-precision rational scalars and fraction-free
//!   rank / nullspace on small dense matrices.
//! - [`geometry`]: projective points, hyperplanes, configurations, canonical
//!   forms, transformations, general-position validation, projection from a point.
//! - [`incidence`]: secant-profile enumeration (exact and floating backends),
//!   per-point counts, and the counting-identity checks.
//! - [`families`]: constructors for every supported family plus exact
//!   combinatorial incidence models for the trigonometric ones.
//! - [`bounds`]: lower-bound machinery, construction-backed upper bounds, the
//!   known-values registry, and the bound-table generator.
//! - [`cli`]: the `ordhyp` command-line surface.

pub mod bounds;
pub mod cli;
pub mod exact_linalg;
pub mod families;
pub mod geometry;
pub mod incidence;
