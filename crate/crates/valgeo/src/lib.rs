//! Numerical geometry of valuations on convex bodies in the plane and in
//! 3-space.
//!
//! A *valuation* is a set function `φ` on convex bodies satisfying
//! `φ(K ∪ L) + φ(K ∩ L) = φ(K) + φ(L)` whenever the union is convex; volume,
//! surface area, and mean width are the classical examples. Any such `φ`
//! induces two "deviation" quantities measuring how far a pair of bodies is
//! from being nested:
//!
//! * the meet deviation `Δ_φ(K, L) = φ(K) + φ(L) − 2 φ(K ∩ L)`, and
//! * the join deviation `ρ_φ(K, L) = 2 φ(hull(K ∪ L)) − φ(K) − φ(L)`.
//!
//! Neither is a metric in general, but both assign lengths to curves of
//! convex bodies, and the infimum of those lengths induces an intrinsic
//! pseudometric with surprisingly clean structure (e.g. for 1-homogeneous
//! valuations the intrinsic meet distance collapses onto the join deviation,
//! which is a bona fide geodesic metric). This crate provides:
//!
//! * [`geom`] — an exact-ish polytope kernel (hulls, Minkowski sums,
//!   intersections, support functions, Hausdorff distance) for vertex-
//!   represented bodies in dimension 2 and 3, degenerate bodies included;
//! * [`valuation`] — intrinsic volumes via Steiner-polynomial fitting and a
//!   Monte-Carlo projection estimator, mixed areas, support-integral
//!   valuations, and numerical extraction of the homogeneous decomposition;
//! * [`deviation`] — meet/join deviations and semimetric diagnostics;
//! * [`path`] — piecewise-interpolation paths of bodies, dyadically refined
//!   length estimates, and the named path constructions (join, meet,
//!   thickened-intersection, and rounded-bridge paths) whose lengths verify
//!   the structure theorems;
//! * [`experiment`] — seeded, reproducible verification experiments that
//!   re-check the theorems numerically and emit machine-readable reports.

pub mod deviation;
pub mod experiment;
pub mod geom;
pub mod path;
pub mod sample;
pub mod tolerance;
pub mod valuation;

pub use deviation::{join_deviation, meet_deviation, Deviation, DeviationKind};
pub use path::{path_length, segment_length, LengthEstimate, Path, PathError, Segment};
pub use geom::{convex_hull, hausdorff_distance, intersect, interpolate, minkowski_sum};
pub use geom::{Body, GeomError, Vector};
pub use tolerance::ToleranceConfig;
pub use valuation::Valuation;
