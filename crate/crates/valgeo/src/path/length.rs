//! Deviation length of segments and paths by dyadic refinement.
//!
//! The length of a segment `γ` under a deviation `dev` is the
//! fine-partition limit of `L_d = Σⱼ dev(γ(j/2^d), γ((j+1)/2^d))`.
//! Refinement stops once two consecutive depths agree to a relative
//! tolerance; partition sums are not monotone in the depth for general
//! segments, so the stopping rule compares successive sums rather than
//! waiting for an increasing sequence to stall.
//!
//! Nested (monotone) segments are special: the bodies along them form a
//! chain, the deviation telescopes, and `L_d` equals
//! `|φ(start) − φ(end)|` at every depth. Those segments short-circuit to
//! the closed form, and the first few refinement depths are still summed
//! as a consistency check.

use super::{LengthEstimate, Path, PathError, Segment};
use crate::deviation::Deviation;
use crate::geom::Body;
use crate::valuation::Valuation;

/// Relative tolerance for declaring two refinement depths equal.
pub const EPS_LEN: f64 = 1e-7;
/// Hard cap on the dyadic refinement depth (`2^MAX_DEPTH` pairs).
pub const MAX_DEPTH: usize = 20;

/// Refinement depths used to cross-check the closed form on nested
/// segments.
const MONOTONE_VERIFY_DEPTH: usize = 2;

/// Closed-form length of a nested segment: `|φ(start) − φ(end)|`.
///
/// Errors with [`PathError::NotNested`] when neither endpoint contains
/// the other; the telescoping argument behind the closed form needs a
/// chain.
pub fn monotone_segment_length(seg: &Segment, phi: &Valuation) -> Result<f64, PathError> {
    if !seg.is_monotone() {
        return Err(PathError::NotNested);
    }
    Ok((phi.eval(seg.start()) - phi.eval(seg.end())).abs())
}

/// Length of one segment under `dev` with the default tolerance and
/// depth cap.
pub fn segment_length(seg: &Segment, dev: &Deviation) -> Result<LengthEstimate, PathError> {
    segment_length_with(seg, dev, EPS_LEN, MAX_DEPTH)
}

/// Length of one segment with explicit stopping tolerance and depth cap.
///
/// The estimate reports `converged = false` when the cap is reached
/// before two consecutive depths agree within `eps_len · max(1, |L_d|)`.
pub fn segment_length_with(
    seg: &Segment,
    dev: &Deviation,
    eps_len: f64,
    max_depth: usize,
) -> Result<LengthEstimate, PathError> {
    let mut bodies = vec![seg.start().clone(), seg.end().clone()];
    let mut prev = partition_sum(&bodies, dev)?;
    let mut depth = 0usize;

    if seg.is_monotone() {
        let closed = prev;
        let mut verified = true;
        while depth < MONOTONE_VERIFY_DEPTH.min(max_depth) {
            bodies = bisect(seg, &bodies)?;
            depth += 1;
            let sum = partition_sum(&bodies, dev)?;
            if (sum - closed).abs() > eps_len * closed.abs().max(1.0) {
                verified = false;
                prev = sum;
                break;
            }
            prev = sum;
        }
        if verified {
            return Ok(LengthEstimate {
                value: closed,
                refinement_depth: depth,
                converged: true,
                lower_bound_pairs: bodies.len() - 1,
            });
        }
    }

    while depth < max_depth {
        bodies = bisect(seg, &bodies)?;
        depth += 1;
        let next = partition_sum(&bodies, dev)?;
        if (next - prev).abs() < eps_len * prev.abs().max(1.0) {
            return Ok(LengthEstimate {
                value: next,
                refinement_depth: depth,
                converged: true,
                lower_bound_pairs: bodies.len() - 1,
            });
        }
        prev = next;
    }
    Ok(LengthEstimate {
        value: prev,
        refinement_depth: depth,
        converged: false,
        lower_bound_pairs: bodies.len() - 1,
    })
}

/// Length of a path: the sum of its segment lengths. The estimate is
/// converged only if every segment converged; the reported depth is the
/// deepest one used.
pub fn path_length(path: &Path, dev: &Deviation) -> Result<LengthEstimate, PathError> {
    path_length_with(path, dev, EPS_LEN, MAX_DEPTH)
}

/// [`path_length`] with explicit stopping tolerance and depth cap.
pub fn path_length_with(
    path: &Path,
    dev: &Deviation,
    eps_len: f64,
    max_depth: usize,
) -> Result<LengthEstimate, PathError> {
    let mut value = 0.0;
    let mut refinement_depth = 0;
    let mut converged = true;
    let mut lower_bound_pairs = 0;
    for seg in path.segments() {
        let est = segment_length_with(seg, dev, eps_len, max_depth)?;
        value += est.value;
        refinement_depth = refinement_depth.max(est.refinement_depth);
        converged &= est.converged;
        lower_bound_pairs += est.lower_bound_pairs;
    }
    Ok(LengthEstimate { value, refinement_depth, converged, lower_bound_pairs })
}

/// The dyadic partition sums `L_0, …, L_depth` of a segment, mostly for
/// diagnostics: each is a valid lower bound for the supremum over
/// partitions.
pub fn partition_sums(
    seg: &Segment,
    dev: &Deviation,
    depth: usize,
) -> Result<Vec<f64>, PathError> {
    let mut bodies = vec![seg.start().clone(), seg.end().clone()];
    let mut out = vec![partition_sum(&bodies, dev)?];
    for _ in 0..depth {
        bodies = bisect(seg, &bodies)?;
        out.push(partition_sum(&bodies, dev)?);
    }
    Ok(out)
}

fn partition_sum(bodies: &[Body], dev: &Deviation) -> Result<f64, PathError> {
    let mut sum = 0.0;
    for w in bodies.windows(2) {
        sum += dev.eval(&w[0], &w[1])?;
    }
    Ok(sum)
}

/// Inserts the midpoint body of every adjacent pair, reusing the bodies
/// already interpolated at the coarser depth.
fn bisect(seg: &Segment, bodies: &[Body]) -> Result<Vec<Body>, PathError> {
    let pairs = bodies.len() - 1;
    let mut out = Vec::with_capacity(2 * pairs + 1);
    for (i, b) in bodies.iter().enumerate() {
        out.push(b.clone());
        if i < pairs {
            let t = (2 * i + 1) as f64 / (2 * pairs) as f64;
            out.push(seg.at(t)?);
        }
    }
    Ok(out)
}
