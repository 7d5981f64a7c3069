//! The [`Body`] type: a convex body given by its extreme points, with a
//! cached halfspace description.
//!
//! Construction always normalizes: input points are deduplicated, their
//! affine rank is measured (SVD of the centered coordinate matrix), and the
//! appropriate hull is built. The result carries
//!
//! * the minimal vertex set (counter-clockwise cycle in the planar cases),
//! * a halfspace representation `{x : n·x ≤ c}` that pins the body exactly
//!   even when it is lower-dimensional (slab pairs for the missing
//!   directions), and
//! * for full-dimensional spatial bodies, polygonal facets with outward unit
//!   normals.
//!
//! Lower-dimensional bodies (points, segments, planar polygons in 3-space)
//! are fully supported; they arise naturally as intersections of
//! full-dimensional bodies.

use super::hull2::hull2_indices;
use super::hull3::{hull3, merge_coplanar};
use super::vector::Vector;
use super::GeomError;
use crate::tolerance::ToleranceConfig;
use nalgebra::DMatrix;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A closed halfspace `{x : normal·x ≤ offset}` with unit normal.
#[derive(Clone, Copy, Debug)]
pub struct Halfspace {
    pub normal: Vector,
    pub offset: f64,
}

/// A polygonal facet of a full-dimensional spatial body. `cycle` indexes the
/// body's vertex list, counter-clockwise as seen from outside.
#[derive(Clone, Debug)]
pub struct Facet {
    pub normal: Vector,
    pub offset: f64,
    pub cycle: Vec<usize>,
}

/// A convex body in dimension 2 or 3, possibly of lower affine dimension.
#[derive(Clone, Debug)]
pub struct Body {
    dim: usize,
    affine_dim: usize,
    vertices: Vec<Vector>,
    facets: Vec<Facet>,
    halfspaces: Vec<Halfspace>,
    /// Supporting plane `(n, c)` with `n·x = c` for planar bodies in 3-space.
    plane: Option<(Vector, f64)>,
}

/// Convex hull of a point set with default tolerances. The result's vertex
/// set is the minimal (extreme-point) set within tolerance.
pub fn convex_hull(points: &[Vector]) -> Result<Body, GeomError> {
    Body::convex_hull_with(points, &ToleranceConfig::default())
}

/// Support function `h_K(u) = max_v ⟨v, u⟩` over the vertices of `K`.
pub fn support(k: &Body, u: &Vector) -> Result<f64, GeomError> {
    if u.dim() != k.dim() {
        return Err(GeomError::DimensionMismatch(k.dim(), u.dim()));
    }
    if u.norm() <= 1e-300 {
        return Err(GeomError::ZeroDirection);
    }
    Ok(k.vertices.iter().map(|v| v.dot(u)).fold(f64::NEG_INFINITY, f64::max))
}

/// True when every vertex of `a` lies in `b` within `tol` (signed halfspace
/// slack). Bodies of mismatched ambient dimension are never nested.
pub fn is_subset(a: &Body, b: &Body, tol: f64) -> bool {
    a.dim == b.dim && a.vertices.iter().all(|v| b.contains_point(v, tol))
}

/// Cached affine dimension (0 for a point, up to the ambient dimension).
pub fn affine_dimension(k: &Body) -> usize {
    k.affine_dim
}

impl Body {
    /// Convex hull with explicit tolerances; see [`convex_hull`].
    pub fn convex_hull_with(points: &[Vector], tol: &ToleranceConfig) -> Result<Body, GeomError> {
        if points.is_empty() {
            return Err(GeomError::EmptyPoints);
        }
        let dim = points[0].dim();
        for p in points {
            if p.dim() != dim {
                return Err(GeomError::DimensionMismatch(dim, p.dim()));
            }
            if !p.is_finite() {
                return Err(GeomError::NonFinite);
            }
        }
        let pts = dedupe(points, tol.eps_geom);
        let (rank, mean, basis) = affine_rank(&pts, tol.eps_rank);

        match (dim, rank) {
            (_, 0) => Ok(Body::point(pts[0])),
            (_, 1) => Ok(Body::segment_from_cloud(&pts, &basis[0])),
            (2, _) => Body::polygon_from_cloud(&pts, tol),
            (3, 2) => Body::planar_from_cloud(&pts, &mean, &basis, tol),
            (3, _) => Body::solid_from_cloud(&pts, tol),
            (d, _) => Err(GeomError::UnsupportedDimension(d)),
        }
    }

    fn point(p: Vector) -> Body {
        let dim = p.dim();
        let mut hs = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut c = [0.0; 3];
            c[i] = 1.0;
            let e = Vector::from_slice(&c[..dim]).expect("axis vector");
            hs.push(Halfspace { normal: e, offset: e.dot(&p) });
            let e = e.scale(-1.0);
            hs.push(Halfspace { normal: e, offset: e.dot(&p) });
        }
        Body { dim, affine_dim: 0, vertices: vec![p], facets: vec![], halfspaces: hs, plane: None }
    }

    fn segment_from_cloud(pts: &[Vector], dir: &Vector) -> Body {
        let dim = pts[0].dim();
        let u = canonical_sign(dir);
        let lo = pts
            .iter()
            .min_by(|a, b| a.dot(&u).total_cmp(&b.dot(&u)))
            .copied()
            .expect("nonempty");
        let hi = pts
            .iter()
            .max_by(|a, b| a.dot(&u).total_cmp(&b.dot(&u)))
            .copied()
            .expect("nonempty");
        let vertices = vec![lo, hi];

        let mut hs = Vec::new();
        let covering = |n: &Vector, verts: &[Vector]| -> Halfspace {
            let off = verts.iter().map(|v| v.dot(n)).fold(f64::NEG_INFINITY, f64::max);
            Halfspace { normal: *n, offset: off }
        };
        // End caps.
        hs.push(covering(&u, &vertices));
        hs.push(covering(&u.scale(-1.0), &vertices));
        // Side slabs pinning the line.
        if dim == 2 {
            let o = Vector::new2(-u.y(), u.x());
            hs.push(covering(&o, &vertices));
            hs.push(covering(&o.scale(-1.0), &vertices));
        } else {
            let seed = least_aligned_axis(&u);
            let o1 = u.cross(&seed).normalized(1e-300).expect("orthogonal direction");
            let o2 = u.cross(&o1);
            for o in [o1, o1.scale(-1.0), o2, o2.scale(-1.0)] {
                hs.push(covering(&o, &vertices));
            }
        }
        Body { dim, affine_dim: 1, vertices, facets: vec![], halfspaces: hs, plane: None }
    }

    fn polygon_from_cloud(pts: &[Vector], tol: &ToleranceConfig) -> Result<Body, GeomError> {
        let cycle = hull2_indices(pts, tol.eps_geom);
        if cycle.len() < 3 {
            // Rank said 2 but the strict hull collapsed: fall back to a
            // segment along the dominant direction.
            let (_, _, basis) = affine_rank(pts, tol.eps_rank);
            return Ok(Body::segment_from_cloud(pts, &basis[0]));
        }
        let vertices: Vec<Vector> = cycle.iter().map(|&i| pts[i]).collect();
        let halfspaces = polygon_halfspaces(&vertices)?;
        Ok(Body { dim: 2, affine_dim: 2, vertices, facets: vec![], halfspaces, plane: None })
    }

    fn planar_from_cloud(
        pts: &[Vector],
        mean: &Vector,
        basis: &[Vector],
        tol: &ToleranceConfig,
    ) -> Result<Body, GeomError> {
        let e1 = canonical_sign(&basis[0]);
        let e2p = basis[1].sub(&e1.scale(basis[1].dot(&e1)));
        let e2 = e2p
            .normalized(1e-300)
            .ok_or_else(|| GeomError::HullFailure("degenerate planar basis".into()))?;
        let n = e1.cross(&e2);

        let projected: Vec<Vector> = pts
            .iter()
            .map(|p| {
                let w = p.sub(mean);
                Vector::new2(w.dot(&e1), w.dot(&e2))
            })
            .collect();
        let cycle = hull2_indices(&projected, tol.eps_geom);
        if cycle.len() < 3 {
            return Ok(Body::segment_from_cloud(pts, &basis[0]));
        }
        let mut vertices: Vec<Vector> = cycle.iter().map(|&i| pts[i]).collect();
        rotate_to_lex_min(&mut vertices);

        let offs: Vec<f64> = vertices.iter().map(|v| v.dot(&n)).collect();
        let c_hi = offs.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        let c_lo = offs.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        let mut hs = vec![
            Halfspace { normal: n, offset: c_hi },
            Halfspace { normal: n.scale(-1.0), offset: -c_lo },
        ];
        let m = vertices.len();
        for i in 0..m {
            let a = vertices[i];
            let b = vertices[(i + 1) % m];
            let d = b
                .sub(&a)
                .normalized(1e-300)
                .ok_or_else(|| GeomError::HullFailure("zero-length polygon edge".into()))?;
            let o = d.cross(&n);
            hs.push(Halfspace { normal: o, offset: o.dot(&a).max(o.dot(&b)) });
        }
        let c_mid = 0.5 * (c_hi + c_lo);
        Ok(Body {
            dim: 3,
            affine_dim: 2,
            vertices,
            facets: vec![],
            halfspaces: hs,
            plane: Some((n, c_mid)),
        })
    }

    fn solid_from_cloud(pts: &[Vector], tol: &ToleranceConfig) -> Result<Body, GeomError> {
        let faces = hull3(pts, tol.eps_geom)?;
        let merged = merge_coplanar(pts, &faces, tol.eps_geom);

        // Vertex set: union of facet cycles, in deterministic (lexicographic)
        // order.
        let mut used: Vec<usize> = merged.iter().flat_map(|m| m.cycle.iter().copied()).collect();
        used.sort_unstable();
        used.dedup();
        let mut order: Vec<usize> = (0..used.len()).collect();
        order.sort_by(|&a, &b| pts[used[a]].lex_cmp(&pts[used[b]]));
        let vertices: Vec<Vector> = order.iter().map(|&i| pts[used[i]]).collect();
        let mut remap = vec![usize::MAX; pts.len()];
        for (new_pos, &old_pos) in order.iter().enumerate() {
            remap[used[old_pos]] = new_pos;
        }

        let mut facets: Vec<Facet> = merged
            .into_iter()
            .map(|m| Facet {
                normal: m.normal,
                offset: m.offset,
                cycle: m.cycle.into_iter().map(|i| remap[i]).collect(),
            })
            .collect();
        facets.sort_by(|a, b| a.normal.lex_cmp(&b.normal).then(a.offset.total_cmp(&b.offset)));
        let halfspaces = facets
            .iter()
            .map(|f| Halfspace { normal: f.normal, offset: f.offset })
            .collect();
        Ok(Body { dim: 3, affine_dim: 3, vertices, facets, halfspaces, plane: None })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim
    }

    /// Extreme points. Counter-clockwise cycle for planar polygons (in 2D,
    /// or within the supporting plane in 3D); lexicographic order otherwise.
    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    /// Polygonal facets; non-empty only for full-dimensional spatial bodies.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Halfspace representation; valid (within tolerance) in every case,
    /// including lower-dimensional bodies.
    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    /// Supporting plane for planar bodies embedded in 3-space.
    pub fn plane(&self) -> Option<(Vector, f64)> {
        self.plane
    }

    /// Support function; see the free function [`support`].
    pub fn support(&self, u: &Vector) -> Result<f64, GeomError> {
        support(self, u)
    }

    /// A vertex attaining the support value in direction `u`.
    pub fn support_point(&self, u: &Vector) -> Vector {
        *self
            .vertices
            .iter()
            .max_by(|a, b| a.dot(u).total_cmp(&b.dot(u)))
            .expect("bodies are nonempty")
    }

    /// Halfspace membership within `tol`.
    pub fn contains_point(&self, p: &Vector, tol: f64) -> bool {
        p.dim() == self.dim && self.halfspaces.iter().all(|h| h.normal.dot(p) <= h.offset + tol)
    }

    /// Vertex index pairs of the edge graph (the segment itself for
    /// one-dimensional bodies, boundary edges for polygons, facet-cycle
    /// edges for solids).
    pub fn edge_indices(&self) -> Vec<(usize, usize)> {
        match (self.dim, self.affine_dim) {
            (_, 0) => vec![],
            (_, 1) => vec![(0, 1)],
            (2, 2) | (3, 2) => {
                let m = self.vertices.len();
                (0..m).map(|i| (i, (i + 1) % m)).collect()
            }
            _ => {
                let mut set = std::collections::BTreeSet::new();
                for f in &self.facets {
                    let m = f.cycle.len();
                    for i in 0..m {
                        let a = f.cycle[i];
                        let b = f.cycle[(i + 1) % m];
                        set.insert((a.min(b), a.max(b)));
                    }
                }
                set.into_iter().collect()
            }
        }
    }

    /// Exact translation; preserves all cached structure.
    pub fn translate(&self, t: &Vector) -> Body {
        debug_assert_eq!(t.dim(), self.dim);
        Body {
            dim: self.dim,
            affine_dim: self.affine_dim,
            vertices: self.vertices.iter().map(|v| v.add(t)).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: f.normal,
                    offset: f.offset + f.normal.dot(t),
                    cycle: f.cycle.clone(),
                })
                .collect(),
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| Halfspace { normal: h.normal, offset: h.offset + h.normal.dot(t) })
                .collect(),
            plane: self.plane.map(|(n, c)| (n, c + n.dot(t))),
        }
    }

    /// Exact homothety `x ↦ c + s·(x − c)` for `s > 0`; preserves all cached
    /// structure.
    pub fn scale_about(&self, c: &Vector, s: f64) -> Body {
        debug_assert!(s > 0.0, "homothety factor must be positive");
        let map_off = |n: &Vector, off: f64| n.dot(c) + s * (off - n.dot(c));
        Body {
            dim: self.dim,
            affine_dim: self.affine_dim,
            vertices: self.vertices.iter().map(|v| c.add(&v.sub(c).scale(s))).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: f.normal,
                    offset: map_off(&f.normal, f.offset),
                    cycle: f.cycle.clone(),
                })
                .collect(),
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| Halfspace { normal: h.normal, offset: map_off(&h.normal, h.offset) })
                .collect(),
            plane: self.plane.map(|(n, cc)| (n, map_off(&n, cc))),
        }
    }

    /// Volume centroid for full-dimensional bodies, area centroid for planar
    /// bodies in 3-space, midpoint/vertex for the degenerate cases. Always an
    /// interior point relative to the body's affine hull.
    pub fn centroid(&self) -> Vector {
        match (self.dim, self.affine_dim) {
            (_, 0) => self.vertices[0],
            (_, 1) => self.vertices[0].lerp(&self.vertices[1], 0.5),
            (2, 2) => {
                let m = self.vertices.len();
                let mut a2 = 0.0;
                let mut cx = 0.0;
                let mut cy = 0.0;
                for i in 0..m {
                    let p = self.vertices[i];
                    let q = self.vertices[(i + 1) % m];
                    let w = p.cross2(&q);
                    a2 += w;
                    cx += (p.x() + q.x()) * w;
                    cy += (p.y() + q.y()) * w;
                }
                if a2.abs() <= 1e-300 {
                    return vertex_mean(&self.vertices);
                }
                Vector::new2(cx / (3.0 * a2), cy / (3.0 * a2))
            }
            (3, 2) => {
                let o = self.vertices[0];
                let mut area2 = 0.0;
                let mut acc = Vector::zero(3);
                for i in 1..self.vertices.len() - 1 {
                    let a = self.vertices[i];
                    let b = self.vertices[i + 1];
                    let w = a.sub(&o).cross(&b.sub(&o)).norm();
                    let tri_c = o.add(&a).add(&b).scale(1.0 / 3.0);
                    acc = acc.add(&tri_c.scale(w));
                    area2 += w;
                }
                if area2 <= 1e-300 {
                    return vertex_mean(&self.vertices);
                }
                acc.scale(1.0 / area2)
            }
            _ => {
                let r = vertex_mean(&self.vertices);
                let mut vol6 = 0.0;
                let mut acc = Vector::zero(3);
                for f in &self.facets {
                    let o = self.vertices[f.cycle[0]];
                    for i in 1..f.cycle.len() - 1 {
                        let a = self.vertices[f.cycle[i]];
                        let b = self.vertices[f.cycle[i + 1]];
                        let w = o.sub(&r).dot(&a.sub(&r).cross(&b.sub(&r)));
                        let tet_c = r.add(&o).add(&a).add(&b).scale(0.25);
                        acc = acc.add(&tet_c.scale(w));
                        vol6 += w;
                    }
                }
                if vol6.abs() <= 1e-300 {
                    return r;
                }
                acc.scale(1.0 / vol6)
            }
        }
    }

    /// Lebesgue measure of the ambient dimension: area in 2D, volume in 3D;
    /// zero for lower-dimensional bodies.
    pub(crate) fn raw_volume(&self) -> f64 {
        match (self.dim, self.affine_dim) {
            (2, 2) => {
                let m = self.vertices.len();
                let mut a2 = 0.0;
                for i in 0..m {
                    a2 += self.vertices[i].cross2(&self.vertices[(i + 1) % m]);
                }
                a2 / 2.0
            }
            (3, 3) => {
                let mut vol6 = 0.0;
                for f in &self.facets {
                    let o = self.vertices[f.cycle[0]];
                    for i in 1..f.cycle.len() - 1 {
                        let a = self.vertices[f.cycle[i]];
                        let b = self.vertices[f.cycle[i + 1]];
                        vol6 += o.dot(&a.cross(&b));
                    }
                }
                vol6 / 6.0
            }
            _ => 0.0,
        }
    }

    /// Boundary measure: perimeter in 2D, surface area in 3D. Degenerate
    /// bodies count both sides (a planar segment has perimeter `2·length`, a
    /// planar polygon in 3-space has surface `2·area`), matching the limits
    /// of shrinking full-dimensional bodies.
    pub(crate) fn raw_boundary(&self) -> f64 {
        match (self.dim, self.affine_dim) {
            (2, 1) => 2.0 * self.vertices[0].dist(&self.vertices[1]),
            (2, 2) => {
                let m = self.vertices.len();
                (0..m).map(|i| self.vertices[i].dist(&self.vertices[(i + 1) % m])).sum()
            }
            (3, 2) => 2.0 * self.planar_area(),
            (3, 3) => self
                .facets
                .iter()
                .map(|f| {
                    let o = self.vertices[f.cycle[0]];
                    let mut a2 = Vector::zero(3);
                    for i in 1..f.cycle.len() - 1 {
                        let a = self.vertices[f.cycle[i]].sub(&o);
                        let b = self.vertices[f.cycle[i + 1]].sub(&o);
                        a2 = a2.add(&a.cross(&b));
                    }
                    a2.norm() / 2.0
                })
                .sum(),
            _ => 0.0,
        }
    }

    /// Area of a planar body embedded in 3-space.
    pub(crate) fn planar_area(&self) -> f64 {
        if self.dim != 3 || self.affine_dim != 2 {
            return 0.0;
        }
        let o = self.vertices[0];
        let mut a2 = Vector::zero(3);
        for i in 1..self.vertices.len() - 1 {
            let a = self.vertices[i].sub(&o);
            let b = self.vertices[i + 1].sub(&o);
            a2 = a2.add(&a.cross(&b));
        }
        a2.norm() / 2.0
    }

    /// Sum of boundary cycle edge lengths for polygons (2D or planar in 3D);
    /// `2·length` for segments, zero for points. This is the perimeter of
    /// the body within its affine hull.
    pub(crate) fn cycle_perimeter(&self) -> f64 {
        match self.affine_dim {
            0 => 0.0,
            1 => 2.0 * self.vertices[0].dist(&self.vertices[1]),
            _ => {
                let m = self.vertices.len();
                (0..m).map(|i| self.vertices[i].dist(&self.vertices[(i + 1) % m])).sum()
            }
        }
    }

    /// Euclidean distance from `p` to the body (zero inside).
    pub fn distance_to_point(&self, p: &Vector) -> f64 {
        debug_assert_eq!(p.dim(), self.dim);
        match (self.dim, self.affine_dim) {
            (_, 0) => p.dist(&self.vertices[0]),
            (_, 1) => point_segment_distance(p, &self.vertices[0], &self.vertices[1]),
            (2, 2) => {
                if self.contains_point(p, 0.0) {
                    return 0.0;
                }
                let m = self.vertices.len();
                (0..m)
                    .map(|i| {
                        point_segment_distance(p, &self.vertices[i], &self.vertices[(i + 1) % m])
                    })
                    .fold(f64::INFINITY, f64::min)
            }
            (3, 2) => {
                let o = self.vertices[0];
                (1..self.vertices.len() - 1)
                    .map(|i| {
                        point_triangle_distance(p, &o, &self.vertices[i], &self.vertices[i + 1])
                    })
                    .fold(f64::INFINITY, f64::min)
            }
            _ => {
                if self.contains_point(p, 0.0) {
                    return 0.0;
                }
                let mut best = f64::INFINITY;
                for f in &self.facets {
                    let o = self.vertices[f.cycle[0]];
                    for i in 1..f.cycle.len() - 1 {
                        let a = self.vertices[f.cycle[i]];
                        let b = self.vertices[f.cycle[i + 1]];
                        best = best.min(point_triangle_distance(p, &o, &a, &b));
                    }
                }
                best
            }
        }
    }
}

/// Mean of the vertex positions (an interior point of the body's affine
/// hull).
fn vertex_mean(verts: &[Vector]) -> Vector {
    let mut acc = Vector::zero(verts[0].dim());
    for v in verts {
        acc = acc.add(v);
    }
    acc.scale(1.0 / verts.len() as f64)
}

/// Outward edge halfspaces of a counter-clockwise polygon.
fn polygon_halfspaces(cycle: &[Vector]) -> Result<Vec<Halfspace>, GeomError> {
    let m = cycle.len();
    let mut hs = Vec::with_capacity(m);
    for i in 0..m {
        let a = cycle[i];
        let b = cycle[(i + 1) % m];
        let d = b
            .sub(&a)
            .normalized(1e-300)
            .ok_or_else(|| GeomError::HullFailure("zero-length polygon edge".into()))?;
        let n = Vector::new2(d.y(), -d.x());
        hs.push(Halfspace { normal: n, offset: n.dot(&a) });
    }
    Ok(hs)
}

/// Deduplicates within `eps` (lexicographic sort + forward window scan).
fn dedupe(points: &[Vector], eps: f64) -> Vec<Vector> {
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.lex_cmp(b));
    let mut out: Vec<Vector> = Vec::with_capacity(sorted.len());
    'next: for p in sorted {
        for q in out.iter().rev() {
            if p.x() - q.x() > eps {
                break;
            }
            if p.dist(q) <= eps {
                continue 'next;
            }
        }
        out.push(p);
    }
    out
}

/// Numerical affine rank of a point cloud, together with the centroid and
/// the principal directions spanning the affine hull. A singular value
/// counts when it exceeds `eps_rank · max(1, σ_max)`.
fn affine_rank(pts: &[Vector], eps_rank: f64) -> (usize, Vector, Vec<Vector>) {
    let dim = pts[0].dim();
    let mean = vertex_mean(pts);
    if pts.len() == 1 {
        return (0, mean, vec![]);
    }
    let m = DMatrix::from_fn(pts.len(), dim, |r, c| pts[r].coord(c) - mean.coord(c));
    let svd = m.svd(false, true);
    let smax = svd.singular_values.iter().fold(0.0_f64, |a, &b| a.max(b));
    let thresh = eps_rank * smax.max(1.0);
    let rank = svd.singular_values.iter().filter(|&&s| s > thresh).count().min(dim);
    let vt = svd.v_t.expect("requested V^T");
    let mut basis = Vec::with_capacity(rank);
    for r in 0..rank {
        let mut c = [0.0; 3];
        for j in 0..dim {
            c[j] = vt[(r, j)];
        }
        basis.push(Vector::from_slice(&c[..dim]).expect("basis vector"));
    }
    (rank, mean, basis)
}

/// Flips `v` if needed so its first nonzero coordinate is positive
/// (deterministic orientation for SVD-derived directions).
fn canonical_sign(v: &Vector) -> Vector {
    for c in v.as_slice() {
        if c.abs() > 1e-300 {
            return if *c < 0.0 { v.scale(-1.0) } else { *v };
        }
    }
    *v
}

/// Coordinate axis least aligned with `u` (for building orthogonal frames).
fn least_aligned_axis(u: &Vector) -> Vector {
    let a = [u.x().abs(), u.y().abs(), u.z().abs()];
    let i = (0..3).min_by(|&p, &q| a[p].total_cmp(&a[q])).expect("three axes");
    let mut c = [0.0; 3];
    c[i] = 1.0;
    Vector::new3(c[0], c[1], c[2])
}

fn rotate_to_lex_min(cycle: &mut [Vector]) {
    if cycle.is_empty() {
        return;
    }
    let start = (0..cycle.len())
        .min_by(|&i, &j| cycle[i].lex_cmp(&cycle[j]))
        .expect("nonempty");
    cycle.rotate_left(start);
}

pub(crate) fn point_segment_distance(p: &Vector, a: &Vector, b: &Vector) -> f64 {
    let d = b.sub(a);
    let dd = d.dot(&d);
    if dd <= 1e-300 {
        return p.dist(a);
    }
    let t = (p.sub(a).dot(&d) / dd).clamp(0.0, 1.0);
    p.dist(&a.add(&d.scale(t)))
}

/// Distance from a point to a (possibly degenerate) triangle, by closest
/// point classification over the triangle's Voronoi regions.
pub(crate) fn point_triangle_distance(p: &Vector, a: &Vector, b: &Vector, c: &Vector) -> f64 {
    let ab = b.sub(a);
    let ac = c.sub(a);
    let ap = p.sub(a);
    let d1 = ab.dot(&ap);
    let d2 = ac.dot(&ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return p.dist(a);
    }
    let bp = p.sub(b);
    let d3 = ab.dot(&bp);
    let d4 = ac.dot(&bp);
    if d3 >= 0.0 && d4 <= d3 {
        return p.dist(b);
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 && (d1 - d3).abs() > 1e-300 {
        let v = d1 / (d1 - d3);
        return p.dist(&a.add(&ab.scale(v)));
    }
    let cp = p.sub(c);
    let d5 = ab.dot(&cp);
    let d6 = ac.dot(&cp);
    if d6 >= 0.0 && d5 <= d6 {
        return p.dist(c);
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 && (d2 - d6).abs() > 1e-300 {
        let w = d2 / (d2 - d6);
        return p.dist(&a.add(&ac.scale(w)));
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        let denom = (d4 - d3) + (d5 - d6);
        if denom > 1e-300 {
            let w = (d4 - d3) / denom;
            return p.dist(&b.add(&c.sub(b).scale(w)));
        }
    }
    let total = va + vb + vc;
    if total.abs() <= 1e-300 {
        // Degenerate (collinear) triangle: fall back to the edges.
        return point_segment_distance(p, a, b)
            .min(point_segment_distance(p, b, c))
            .min(point_segment_distance(p, a, c));
    }
    let v = vb / total;
    let w = vc / total;
    p.dist(&a.add(&ab.scale(v)).add(&ac.scale(w)))
}

impl Serialize for Body {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Body", 2)?;
        s.serialize_field("dim", &self.dim)?;
        s.serialize_field("vertices", &self.vertices)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Body {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            dim: usize,
            vertices: Vec<Vector>,
        }
        let r = Repr::deserialize(deserializer)?;
        if r.dim != 2 && r.dim != 3 {
            return Err(D::Error::custom(format!("dim must be 2 or 3, got {}", r.dim)));
        }
        for (i, v) in r.vertices.iter().enumerate() {
            if v.dim() != r.dim {
                return Err(D::Error::custom(format!(
                    "vertex {i} has {} coordinates but dim is {}",
                    v.dim(),
                    r.dim
                )));
            }
        }
        convex_hull(&r.vertices).map_err(|e| D::Error::custom(format!("invalid body: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square01() -> Body {
        convex_hull(&[
            Vector::new2(0.0, 0.0),
            Vector::new2(1.0, 0.0),
            Vector::new2(1.0, 1.0),
            Vector::new2(0.0, 1.0),
        ])
        .unwrap()
    }

    fn cube01() -> Body {
        let mut pts = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    pts.push(Vector::new3(x, y, z));
                }
            }
        }
        convex_hull(&pts).unwrap()
    }

    #[test]
    fn square_normalizes_to_four_ccw_vertices() {
        let k = convex_hull(&[
            Vector::new2(0.0, 0.0),
            Vector::new2(1.0, 0.0),
            Vector::new2(1.0, 1.0),
            Vector::new2(0.0, 1.0),
            Vector::new2(0.5, 0.5),
            Vector::new2(0.5, 0.0),
            Vector::new2(0.0, 0.0), // duplicate
        ])
        .unwrap();
        assert_eq!(k.vertices().len(), 4);
        assert_eq!(k.affine_dim(), 2);
        assert!((k.raw_volume() - 1.0).abs() < 1e-12);
        assert!((k.raw_boundary() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn collinear_points_become_a_segment() {
        let k = convex_hull(&[
            Vector::new2(0.0, 0.0),
            Vector::new2(0.5, 0.5),
            Vector::new2(2.0, 2.0),
        ])
        .unwrap();
        assert_eq!(k.affine_dim(), 1);
        assert_eq!(k.vertices().len(), 2);
        assert_eq!(k.raw_volume(), 0.0);
        // Both-sides convention for the degenerate perimeter.
        assert!((k.raw_boundary() - 2.0 * 8.0_f64.sqrt()).abs() < 1e-12);
        // Halfspaces pin the segment: midpoint in, off-line point out.
        assert!(k.contains_point(&Vector::new2(1.0, 1.0), 1e-9));
        assert!(!k.contains_point(&Vector::new2(1.0, 1.2), 1e-9));
        assert!(!k.contains_point(&Vector::new2(3.0, 3.0), 1e-9));
    }

    #[test]
    fn coincident_points_become_a_point() {
        let k = convex_hull(&[Vector::new3(1.0, 2.0, 3.0), Vector::new3(1.0, 2.0, 3.0)]).unwrap();
        assert_eq!(k.affine_dim(), 0);
        assert_eq!(k.vertices().len(), 1);
        assert!(k.contains_point(&Vector::new3(1.0, 2.0, 3.0), 1e-9));
        assert!(!k.contains_point(&Vector::new3(1.0, 2.0, 3.1), 1e-9));
    }

    #[test]
    fn cube_has_six_facets_and_unit_volume() {
        let k = cube01();
        assert_eq!(k.affine_dim(), 3);
        assert_eq!(k.vertices().len(), 8);
        assert_eq!(k.facets().len(), 6);
        assert!((k.raw_volume() - 1.0).abs() < 1e-12);
        assert!((k.raw_boundary() - 6.0).abs() < 1e-12);
        assert_eq!(k.edge_indices().len(), 12);
        let c = k.centroid();
        assert!(c.dist(&Vector::new3(0.5, 0.5, 0.5)) < 1e-12);
    }

    #[test]
    fn planar_triangle_in_threespace() {
        let k = convex_hull(&[
            Vector::new3(0.0, 0.0, 1.0),
            Vector::new3(1.0, 0.0, 1.0),
            Vector::new3(0.0, 1.0, 1.0),
            Vector::new3(0.25, 0.25, 1.0),
        ])
        .unwrap();
        assert_eq!(k.affine_dim(), 2);
        assert_eq!(k.vertices().len(), 3);
        assert!((k.planar_area() - 0.5).abs() < 1e-12);
        assert!((k.raw_boundary() - 1.0).abs() < 1e-12, "double-sided area");
        assert_eq!(k.raw_volume(), 0.0);
        assert!(k.contains_point(&Vector::new3(0.2, 0.2, 1.0), 1e-9));
        assert!(!k.contains_point(&Vector::new3(0.2, 0.2, 1.1), 1e-9));
        assert!(!k.contains_point(&Vector::new3(0.9, 0.9, 1.0), 1e-9));
    }

    #[test]
    fn support_values_on_the_square() {
        let k = square01();
        assert_eq!(k.support(&Vector::new2(1.0, 0.0)).unwrap(), 1.0);
        assert_eq!(k.support(&Vector::new2(-1.0, 0.0)).unwrap(), 0.0);
        assert_eq!(k.support(&Vector::new2(1.0, 1.0)).unwrap(), 2.0);
        assert!(matches!(
            k.support(&Vector::new2(0.0, 0.0)),
            Err(GeomError::ZeroDirection)
        ));
    }

    #[test]
    fn subset_relations() {
        let small = square01();
        let big = small.scale_about(&Vector::new2(0.5, 0.5), 2.0);
        assert!(is_subset(&small, &big, 1e-9));
        assert!(!is_subset(&big, &small, 1e-9));
        assert!(is_subset(&small, &small, 1e-9));
    }

    #[test]
    fn distances_from_outside_points() {
        let k = square01();
        assert!((k.distance_to_point(&Vector::new2(2.0, 0.5)) - 1.0).abs() < 1e-12);
        assert!((k.distance_to_point(&Vector::new2(2.0, 2.0)) - 2.0_f64.sqrt()).abs() < 1e-12);
        assert_eq!(k.distance_to_point(&Vector::new2(0.5, 0.5)), 0.0);

        let c = cube01();
        assert!((c.distance_to_point(&Vector::new3(2.0, 0.5, 0.5)) - 1.0).abs() < 1e-12);
        assert!(
            (c.distance_to_point(&Vector::new3(2.0, 2.0, 2.0)) - 3.0_f64.sqrt()).abs() < 1e-12
        );
        assert_eq!(c.distance_to_point(&Vector::new3(0.5, 0.5, 0.5)), 0.0);
    }

    #[test]
    fn translation_and_homothety_are_exact() {
        let k = square01();
        let t = k.translate(&Vector::new2(3.0, -1.0));
        assert!((t.raw_volume() - 1.0).abs() < 1e-12);
        assert!(t.contains_point(&Vector::new2(3.5, -0.5), 1e-12));
        let s = k.scale_about(&Vector::new2(0.0, 0.0), 3.0);
        assert!((s.raw_volume() - 9.0).abs() < 1e-12);
        assert!((s.raw_boundary() - 12.0).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip_normalizes() {
        let txt = r#"{"dim": 2, "vertices": [[0,0],[1,0],[1,1],[0,1],[0.5,0.5]]}"#;
        let k: Body = serde_json::from_str(txt).unwrap();
        assert_eq!(k.vertices().len(), 4);
        let back = serde_json::to_string(&k).unwrap();
        let k2: Body = serde_json::from_str(&back).unwrap();
        assert_eq!(k.vertices(), k2.vertices());
    }

    #[test]
    fn json_rejects_mismatched_dimension() {
        let txt = r#"{"dim": 3, "vertices": [[0,0],[1,0]]}"#;
        assert!(serde_json::from_str::<Body>(txt).is_err());
        let txt = r#"{"dim": 4, "vertices": [[0,0],[1,0]]}"#;
        assert!(serde_json::from_str::<Body>(txt).is_err());
    }

    #[test]
    fn segment_in_threespace_halfspaces() {
        let k = convex_hull(&[Vector::new3(0.0, 0.0, 0.0), Vector::new3(0.0, 0.0, 2.0)]).unwrap();
        assert_eq!(k.affine_dim(), 1);
        assert!(k.contains_point(&Vector::new3(0.0, 0.0, 1.0), 1e-9));
        assert!(!k.contains_point(&Vector::new3(0.1, 0.0, 1.0), 1e-9));
        assert!(!k.contains_point(&Vector::new3(0.0, 0.0, 2.5), 1e-9));
    }
}
