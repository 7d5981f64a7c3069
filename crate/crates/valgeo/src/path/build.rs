//! Canonical path constructions between two convex bodies.
//!
//! Every builder returns a chain of nested (monotone) segments, so the
//! resulting lengths telescope exactly:
//!
//! * join path `K → hull(K ∪ L) → L` — always available;
//! * meet path `K → K ∩ L → L` — needs a full-dimensional intersection;
//! * thickened path through `(K ∩ L) + δB` — for nonempty but possibly
//!   degenerate intersections;
//! * bridge path through a rounded capsule between the centroids — for
//!   disjoint bodies;
//! * bridging geodesic through a verified bridging body `M`, whose
//!   meet-volume length equals the deviation `Δ_Vol(K, L)` itself.

use super::{Path, PathError};
use crate::deviation::hull_of_union;
use crate::geom::{ball_approx, convex_hull, intersect, minkowski_sum, Body, Vector};
use crate::tolerance::EPS_VOL;

/// Vertex budget for the rounded caps used by path constructions
/// (polygon count in 2D, icosphere budget in 3D).
pub const PATH_BALL_VERTICES: usize = 64;

/// The join path `K → hull(K ∪ L) → L`: two monotone segments, length
/// `ρ_φ(K, L)` for any monotone valuation `φ`.
pub fn build_join_path(k: &Body, l: &Body) -> Result<Path, PathError> {
    let join = hull_of_union(k, l)?;
    Path::from_bodies(&[k.clone(), join, l.clone()])
}

/// The meet path `K → K ∩ L → L`: two monotone segments, length
/// `Δ_φ(K, L)`.
///
/// Errors when the intersection is empty or lower-dimensional — use
/// [`build_thickened_path`] (degenerate meet) or [`build_bridge_path`]
/// (empty meet) there.
pub fn build_meet_path(k: &Body, l: &Body) -> Result<Path, PathError> {
    let meet = intersect(k, l)?.ok_or(PathError::EmptyIntersection)?;
    if meet.affine_dim() < k.dim() {
        return Err(PathError::IntersectionNotFullDimensional);
    }
    Path::from_bodies(&[k.clone(), meet, l.clone()])
}

/// The thickened meet path `K → K ∩ T → T → L ∩ T → L` with
/// `T = (K ∩ L) + δB`.
///
/// Works whenever the intersection is nonempty, even when it is a shared
/// face or point; the thickening restores full dimension at the cost of
/// an extra length `O(δ)`.
pub fn build_thickened_path(k: &Body, l: &Body, delta: f64) -> Result<Path, PathError> {
    if delta <= 0.0 || !delta.is_finite() {
        return Err(PathError::BadDelta(delta));
    }
    let meet = intersect(k, l)?.ok_or(PathError::EmptyIntersection)?;
    let ball = ball_approx(&Vector::zero(k.dim()), delta, PATH_BALL_VERTICES)?;
    let thick = minkowski_sum(&meet, &ball)?;
    let k_cap = intersect(k, &thick)?.ok_or(PathError::EmptyIntersection)?;
    let l_cap = intersect(l, &thick)?.ok_or(PathError::EmptyIntersection)?;
    Path::from_bodies(&[k.clone(), k_cap, thick, l_cap, l.clone()])
}

/// The capsule `conv{p, q} + r·B`: a segment rounded by a ball of radius
/// `r` (a polygonal/polyhedral approximation of it).
pub fn spheropolyhedron(p: &Vector, q: &Vector, r: f64) -> Result<Body, PathError> {
    let seg = convex_hull(&[*p, *q])?;
    let ball = ball_approx(&Vector::zero(p.dim()), r, PATH_BALL_VERTICES)?;
    Ok(minkowski_sum(&seg, &ball)?)
}

/// The bridge path `K → H ∩ K → H → H ∩ L → L` where `H` is the capsule
/// of radius `r` between the two centroids.
///
/// Designed for disjoint bodies: its meet-volume length exceeds
/// `Δ_Vol(K, L)` by at most `2·Vol(H)`, which shrinks with `r` but never
/// to zero. Errors when `H` meets an endpoint only degenerately.
pub fn build_bridge_path(k: &Body, l: &Body, r: f64) -> Result<Path, PathError> {
    let h = spheropolyhedron(&k.centroid(), &l.centroid(), r)?;
    let full = k.dim();
    let hk = intersect(&h, k)?
        .filter(|b| b.affine_dim() == full)
        .ok_or(PathError::DegenerateBridge)?;
    let hl = intersect(&h, l)?
        .filter(|b| b.affine_dim() == full)
        .ok_or(PathError::DegenerateBridge)?;
    Path::from_bodies(&[k.clone(), hk, h, hl, l.clone()])
}

/// The geometric thickening radii `0.2 · 2^{−j}`, `j = 0..=6`, used when
/// probing how path lengths behave as a thickening or bridge shrinks.
pub fn delta_sequence() -> Vec<f64> {
    (0..=6).map(|j| 0.2 * 0.5_f64.powi(j)).collect()
}

/// Checks whether `M` is a bridging body for the pair `(K, L)`:
/// `M ∩ K` and `M ∩ L` full-dimensional, `Vol(M \ (K ∪ L)) ≤ eps` and
/// `Vol((K ∩ L) \ M) ≤ eps` (both via inclusion–exclusion).
pub fn verify_bridging_body(
    k: &Body,
    l: &Body,
    m: &Body,
    eps_vol: f64,
) -> Result<bool, PathError> {
    let full = k.dim();
    let mk = match intersect(m, k)? {
        Some(b) if b.affine_dim() == full => b,
        _ => return Ok(false),
    };
    let ml = match intersect(m, l)? {
        Some(b) if b.affine_dim() == full => b,
        _ => return Ok(false),
    };
    let mkl = intersect(&mk, l)?.map(|b| b.raw_volume()).unwrap_or(0.0);
    let outside = m.raw_volume() - mk.raw_volume() - ml.raw_volume() + mkl;

    let meet = intersect(k, l)?;
    let uncovered = match &meet {
        Some(j) => {
            let covered = intersect(j, m)?.map(|b| b.raw_volume()).unwrap_or(0.0);
            j.raw_volume() - covered
        }
        None => 0.0,
    };
    Ok(outside <= eps_vol && uncovered <= eps_vol)
}

/// Searches for a bridging body:
///
/// * full-dimensional intersection → `K` itself bridges;
/// * intersection along a shared facet → a slab across the facet
///   (clipped to the union when the union is convex), returned only if
///   [`verify_bridging_body`] accepts it;
/// * disjoint bodies → `None` (no bridging body exists);
/// * anything else (point or edge contact, slab rejected) → `None`,
///   meaning this search found nothing, not that nothing exists.
pub fn find_bridging_body(k: &Body, l: &Body) -> Result<Option<Body>, PathError> {
    if !k.is_full_dimensional() || !l.is_full_dimensional() {
        return Err(PathError::NotFullDimensional);
    }
    let n = k.dim();
    let meet = match intersect(k, l)? {
        None => return Ok(None),
        Some(m) => m,
    };
    if meet.affine_dim() == n {
        return Ok(Some(k.clone()));
    }
    if meet.affine_dim() + 1 != n {
        return Ok(None);
    }
    let normal = match facet_normal(&meet) {
        Some(u) => u,
        None => return Ok(None),
    };
    let wk = k.support(&normal)? + k.support(&normal.scale(-1.0))?;
    let wl = l.support(&normal)? + l.support(&normal.scale(-1.0))?;
    let w = 0.25 * wk.min(wl);
    let rod = convex_hull(&[normal.scale(-w), normal.scale(w)])?;
    let slab = minkowski_sum(&meet, &rod)?;
    // When the union is convex (its hull adds no volume) the slab can be
    // clipped to it, which removes any part sticking out sideways; for a
    // non-convex union the unclipped slab is still tried and the
    // verification below decides.
    let union = hull_of_union(k, l)?;
    let hull_excess = union.raw_volume() - k.raw_volume() - l.raw_volume();
    let m = if hull_excess <= EPS_VOL {
        match intersect(&slab, &union)? {
            Some(b) => b,
            None => return Ok(None),
        }
    } else {
        slab
    };
    if verify_bridging_body(k, l, &m, EPS_VOL)? {
        Ok(Some(m))
    } else {
        Ok(None)
    }
}

/// Unit normal of a facet-dimensional body: the edge normal of a segment
/// in the plane, or the carrier-plane normal of a planar body in space.
fn facet_normal(face: &Body) -> Option<Vector> {
    match (face.dim(), face.affine_dim()) {
        (2, 1) => {
            let v = face.vertices();
            let d = v[1].sub(&v[0]).normalized(1e-12)?;
            Some(Vector::new2(d.y(), -d.x()))
        }
        (3, 2) => face.plane().map(|(nrm, _)| nrm),
        _ => None,
    }
}

/// The path `K → M ∩ K → M → M ∩ L → L` through a verified bridging body.
///
/// Its meet-volume length telescopes to exactly `Δ_Vol(K, L)`; the
/// builder rejects `M` when [`verify_bridging_body`] fails.
pub fn build_bridging_geodesic(k: &Body, l: &Body, m: &Body) -> Result<Path, PathError> {
    if !verify_bridging_body(k, l, m, EPS_VOL)? {
        return Err(PathError::BridgeRejected(
            "outside-volume or meet-coverage check failed".into(),
        ));
    }
    let mk = intersect(m, k)?.expect("verified nonempty");
    let ml = intersect(m, l)?.expect("verified nonempty");
    Path::from_bodies(&[k.clone(), mk, m.clone(), ml, l.clone()])
}
