//! Polytope kernel for convex bodies in dimension 2 and 3.
//!
//! Bodies are stored by their extreme points (vertex representation) with a
//! cached halfspace representation. Degenerate bodies — points, segments, and
//! planar polygons embedded in 3-space — are first-class citizens: every
//! operation either handles them or reports a structured error, because the
//! intersection of two full-dimensional bodies routinely collapses to a lower
//! dimension and the downstream valuation theory cares about exactly those
//! collapses.
//!
//! All predicates are tolerance-based (see [`crate::tolerance`]); the kernel
//! is built for desk-scale numerics (coordinates roughly in `[1e-3, 10]`),
//! not adversarial robustness.

mod ball;
mod body;
pub(crate) mod hull2;
mod hull3;
mod ops;
mod vector;

pub use ball::ball_approx;
pub use body::{affine_dimension, convex_hull, is_subset, support, Body, Facet, Halfspace};
pub use ops::{hausdorff_distance, interpolate, intersect, minkowski_sum};
pub use vector::Vector;

use thiserror::Error;

/// Errors from kernel operations.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum GeomError {
    #[error("point set is empty")]
    EmptyPoints,
    #[error("mixed ambient dimensions {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("ambient dimension must be 2 or 3, got {0}")]
    UnsupportedDimension(usize),
    #[error("coordinates must be finite")]
    NonFinite,
    #[error("direction vector is numerically zero")]
    ZeroDirection,
    #[error("interpolation parameter {0} lies outside [0, 1]")]
    ParamOutOfRange(f64),
    #[error("ball approximation needs a positive finite radius, got {0}")]
    BadRadius(f64),
    #[error("ball approximation needs at least {min} vertices, got {got}")]
    TooFewBallVertices { min: usize, got: usize },
    #[error("convex hull construction failed: {0}")]
    HullFailure(String),
    #[error("invalid body description: {0}")]
    InvalidBody(String),
}
