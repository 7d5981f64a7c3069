//! A path-independent lower bound on deviation lengths in the plane.
//!
//! For a valuation given by a mixed-area measure `μ = Σⱼ wⱼ δ_{uⱼ}` the
//! deviation of two bodies dominates half the weighted support gap,
//! and that gap obeys the triangle inequality along any path. Hence
//!
//! `length(γ) ≥ ½ Σⱼ |h_K(uⱼ) − h_L(uⱼ)| wⱼ`
//!
//! for every path `γ` from `K` to `L`, which turns the support gap into a
//! certificate that no shorter path was missed by the constructions in
//! [`super::build`].

use super::PathError;
use crate::geom::{ball_approx, Body, Vector};
use crate::valuation::MixedAreaMeasure2D;

/// Vertex count of the polygonal unit disc behind
/// [`unit_circle_measure`].
pub const CIRCLE_MEASURE_VERTICES: usize = 256;

/// The weighted support gap `½ Σⱼ |h_K(uⱼ) − h_L(uⱼ)| wⱼ`: a lower bound
/// for the length of every path from `K` to `L` under the deviation of
/// the valuation with mixed-area measure `measure`.
pub fn length_lower_bound(
    measure: &MixedAreaMeasure2D,
    k: &Body,
    l: &Body,
) -> Result<f64, PathError> {
    let mut sum = 0.0;
    for (u, w) in measure.atoms() {
        sum += (k.support(u)? - l.support(u)?).abs() * w;
    }
    Ok(0.5 * sum)
}

/// The edge measure of a regular 256-gon unit disc: a uniform measure on
/// directions whose induced valuation approximates the first intrinsic
/// volume (bias about `1e-4` relative, from the polygonal perimeter).
pub fn unit_circle_measure() -> MixedAreaMeasure2D {
    let disc = ball_approx(&Vector::zero(2), 1.0, CIRCLE_MEASURE_VERTICES)
        .expect("unit disc parameters are valid");
    MixedAreaMeasure2D::from_polygon(&disc).expect("a polygon has a closed edge measure")
}
