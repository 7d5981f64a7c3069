//! Binary operations on convex bodies: Minkowski sums, linear
//! interpolation, intersections, and the Hausdorff distance.

use super::body::{convex_hull, Body};
use super::vector::Vector;
use super::GeomError;
use crate::tolerance::ToleranceConfig;

/// Minkowski sum `K + L = {a + b : a ∈ K, b ∈ L}`, computed as the hull of
/// pairwise vertex sums.
pub fn minkowski_sum(k: &Body, l: &Body) -> Result<Body, GeomError> {
    if k.dim() != l.dim() {
        return Err(GeomError::DimensionMismatch(k.dim(), l.dim()));
    }
    let mut sums = Vec::with_capacity(k.vertices().len() * l.vertices().len());
    for a in k.vertices() {
        for b in l.vertices() {
            sums.push(a.add(b));
        }
    }
    convex_hull(&sums)
}

/// Minkowski combination `(1−t)·K + t·L` for `t ∈ [0, 1]`.
pub fn interpolate(k: &Body, l: &Body, t: f64) -> Result<Body, GeomError> {
    if k.dim() != l.dim() {
        return Err(GeomError::DimensionMismatch(k.dim(), l.dim()));
    }
    if !(0.0..=1.0).contains(&t) || !t.is_finite() {
        return Err(GeomError::ParamOutOfRange(t));
    }
    let mut pts = Vec::with_capacity(k.vertices().len() * l.vertices().len());
    for a in k.vertices() {
        for b in l.vertices() {
            pts.push(a.lerp(b, t));
        }
    }
    convex_hull(&pts)
}

/// Intersection `K ∩ L`, or `None` when the bodies are disjoint. The result
/// may be lower-dimensional (bodies touching along a face, an edge, or a
/// single point).
pub fn intersect(k: &Body, l: &Body) -> Result<Option<Body>, GeomError> {
    intersect_with(k, l, &ToleranceConfig::default())
}

/// [`intersect`] with explicit tolerances.
///
/// Every vertex of a convex intersection is tight on at least `dim`
/// constraints drawn from the two halfspace systems, so it is either a
/// vertex of one body inside the other, or the crossing of one body's edge
/// with the other's constraint boundary. All such candidates are
/// enumerated, filtered by membership in both bodies, and hulled.
pub fn intersect_with(
    k: &Body,
    l: &Body,
    tol: &ToleranceConfig,
) -> Result<Option<Body>, GeomError> {
    if k.dim() != l.dim() {
        return Err(GeomError::DimensionMismatch(k.dim(), l.dim()));
    }
    let eps = tol.eps_geom;
    let mut candidates: Vec<Vector> = Vec::new();

    for v in k.vertices() {
        if l.contains_point(v, eps) {
            candidates.push(*v);
        }
    }
    for v in l.vertices() {
        if k.contains_point(v, eps) {
            candidates.push(*v);
        }
    }
    edge_boundary_crossings(k, l, eps, &mut candidates);
    edge_boundary_crossings(l, k, eps, &mut candidates);

    if candidates.is_empty() {
        return Ok(None);
    }
    Body::convex_hull_with(&candidates, tol).map(Some)
}

/// Pushes crossings of `a`'s edges with `b`'s constraint planes that lie in
/// both bodies.
fn edge_boundary_crossings(a: &Body, b: &Body, eps: f64, out: &mut Vec<Vector>) {
    let verts = a.vertices();
    for (i, j) in a.edge_indices() {
        let p = verts[i];
        let q = verts[j];
        for h in b.halfspaces() {
            let fp = h.normal.dot(&p) - h.offset;
            let fq = h.normal.dot(&q) - h.offset;
            if fp * fq > 0.0 || (fp - fq).abs() <= 1e-300 {
                continue;
            }
            let t = fp / (fp - fq);
            if !(0.0..=1.0).contains(&t) {
                continue;
            }
            let x = p.lerp(&q, t);
            if a.contains_point(&x, eps) && b.contains_point(&x, eps) {
                out.push(x);
            }
        }
    }
}

/// Hausdorff distance between convex bodies. The farthest-point supremum
/// over a convex body is attained at a vertex, so it suffices to scan the
/// vertex sets.
pub fn hausdorff_distance(k: &Body, l: &Body) -> Result<f64, GeomError> {
    if k.dim() != l.dim() {
        return Err(GeomError::DimensionMismatch(k.dim(), l.dim()));
    }
    let one_way = |a: &Body, b: &Body| {
        a.vertices().iter().map(|v| b.distance_to_point(v)).fold(0.0_f64, f64::max)
    };
    Ok(one_way(k, l).max(one_way(l, k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(x0: f64, y0: f64, x1: f64, y1: f64) -> Body {
        convex_hull(&[
            Vector::new2(x0, y0),
            Vector::new2(x1, y0),
            Vector::new2(x1, y1),
            Vector::new2(x0, y1),
        ])
        .unwrap()
    }

    fn box3(lo: [f64; 3], hi: [f64; 3]) -> Body {
        let mut pts = Vec::new();
        for x in [lo[0], hi[0]] {
            for y in [lo[1], hi[1]] {
                for z in [lo[2], hi[2]] {
                    pts.push(Vector::new3(x, y, z));
                }
            }
        }
        convex_hull(&pts).unwrap()
    }

    #[test]
    fn minkowski_sum_of_squares_is_a_square() {
        let k = square(0.0, 0.0, 1.0, 1.0);
        let s = minkowski_sum(&k, &k).unwrap();
        assert_eq!(s.vertices().len(), 4);
        assert!((s.raw_volume() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn minkowski_sum_with_a_segment_extrudes() {
        let k = square(0.0, 0.0, 1.0, 1.0);
        let seg = convex_hull(&[Vector::new2(0.0, 0.0), Vector::new2(1.0, 0.0)]).unwrap();
        let s = minkowski_sum(&k, &seg).unwrap();
        assert!((s.raw_volume() - 2.0).abs() < 1e-12);
        assert!((s.raw_boundary() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn interpolation_endpoints_and_midpoint() {
        let k = square(0.0, 0.0, 1.0, 1.0);
        let l = square(4.0, 0.0, 6.0, 2.0);
        let at0 = interpolate(&k, &l, 0.0).unwrap();
        assert!((at0.raw_volume() - 1.0).abs() < 1e-12);
        assert!(hausdorff_distance(&at0, &k).unwrap() < 1e-12);
        let at1 = interpolate(&k, &l, 1.0).unwrap();
        assert!(hausdorff_distance(&at1, &l).unwrap() < 1e-12);
        // Midpoint of homothetic squares: side (1+2)/2, centered accordingly.
        let mid = interpolate(&k, &l, 0.5).unwrap();
        assert!((mid.raw_volume() - 2.25).abs() < 1e-12);
        assert!(interpolate(&k, &l, 1.5).is_err());
        assert!(interpolate(&k, &l, -0.1).is_err());
    }

    #[test]
    fn intersection_of_overlapping_squares() {
        let k = square(0.0, 0.0, 2.0, 2.0);
        let l = square(1.0, 1.0, 3.0, 3.0);
        let m = intersect(&k, &l).unwrap().expect("overlap");
        assert_eq!(m.affine_dim(), 2);
        assert!((m.raw_volume() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn intersection_of_disjoint_squares_is_empty() {
        let k = square(0.0, 0.0, 1.0, 1.0);
        let l = square(2.0, 0.0, 3.0, 1.0);
        assert!(intersect(&k, &l).unwrap().is_none());
    }

    #[test]
    fn squares_touching_along_an_edge_meet_in_a_segment() {
        let k = square(0.0, 0.0, 1.0, 1.0);
        let l = square(1.0, 0.0, 2.0, 1.0);
        let m = intersect(&k, &l).unwrap().expect("shared edge");
        assert_eq!(m.affine_dim(), 1);
        let len = m.vertices()[0].dist(&m.vertices()[1]);
        assert!((len - 1.0).abs() < 1e-9);
    }

    #[test]
    fn squares_touching_at_a_corner_meet_in_a_point() {
        let k = square(0.0, 0.0, 1.0, 1.0);
        let l = square(1.0, 1.0, 2.0, 2.0);
        let m = intersect(&k, &l).unwrap().expect("shared corner");
        assert_eq!(m.affine_dim(), 0);
        assert!(m.vertices()[0].dist(&Vector::new2(1.0, 1.0)) < 1e-9);
    }

    #[test]
    fn box_intersections_in_threespace() {
        let k = box3([0.0; 3], [1.0; 3]);
        let l = box3([0.5, 0.5, 0.5], [2.0, 2.0, 2.0]);
        let m = intersect(&k, &l).unwrap().expect("overlap");
        assert_eq!(m.affine_dim(), 3);
        assert!((m.raw_volume() - 0.125).abs() < 1e-9);

        // Face-to-face contact: planar intersection.
        let r = box3([1.0, 0.0, 0.0], [2.0, 1.0, 1.0]);
        let f = intersect(&k, &r).unwrap().expect("shared face");
        assert_eq!(f.affine_dim(), 2);
        assert!((f.planar_area() - 1.0).abs() < 1e-9);

        // Disjoint.
        let d = box3([3.0, 0.0, 0.0], [4.0, 1.0, 1.0]);
        assert!(intersect(&k, &d).unwrap().is_none());
    }

    #[test]
    fn rotated_square_intersection_has_eight_sides() {
        let k = square(-1.0, -1.0, 1.0, 1.0);
        let s = 2.0_f64.sqrt();
        let rot = convex_hull(&[
            Vector::new2(s, 0.0),
            Vector::new2(0.0, s),
            Vector::new2(-s, 0.0),
            Vector::new2(0.0, -s),
        ])
        .unwrap();
        let m = intersect(&k, &rot).unwrap().expect("overlap");
        assert_eq!(m.vertices().len(), 8);
        // Octagon area: square minus four corner triangles.
        let tri = (2.0 - s) * (2.0 - s) / 2.0;
        assert!((m.raw_volume() - (4.0 - 4.0 * tri)).abs() < 1e-9);
    }

    #[test]
    fn hausdorff_distances_match_hand_values() {
        let k = square(0.0, 0.0, 1.0, 1.0);
        let l = square(0.0, 0.0, 2.0, 2.0);
        assert!((hausdorff_distance(&k, &l).unwrap() - 2.0_f64.sqrt()).abs() < 1e-12);
        assert_eq!(hausdorff_distance(&k, &k).unwrap(), 0.0);

        let shift = k.translate(&Vector::new2(3.0, 0.0));
        assert!((hausdorff_distance(&k, &shift).unwrap() - 3.0).abs() < 1e-12);

        let a = box3([0.0; 3], [1.0; 3]);
        let b = a.translate(&Vector::new3(0.0, 0.0, 2.0));
        assert!((hausdorff_distance(&a, &b).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn segment_intersecting_a_square() {
        let k = square(0.0, 0.0, 1.0, 1.0);
        let seg = convex_hull(&[Vector::new2(-1.0, 0.5), Vector::new2(2.0, 0.5)]).unwrap();
        let m = intersect(&k, &seg).unwrap().expect("crosses");
        assert_eq!(m.affine_dim(), 1);
        let len = m.vertices()[0].dist(&m.vertices()[1]);
        assert!((len - 1.0).abs() < 1e-9);
    }
}
