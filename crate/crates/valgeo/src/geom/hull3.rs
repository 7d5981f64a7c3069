//! Spatial convex hull: quickhull with conflict lists, followed by merging
//! of coplanar triangles into polygonal facets.
//!
//! The algorithm maintains a triangulated hull whose faces carry conflict
//! lists (the not-yet-dominated points that see the face). Each iteration
//! inserts the farthest conflict point of some face, deletes the faces
//! visible from it, and cones new triangles over the horizon loop. Points
//! within tolerance of the current hull are discarded, so the final vertex
//! set contains extreme points only. Coplanar triangles (faces of Minkowski
//! sums, boxes, and other polytopes are rarely simplicial) are then merged
//! into polygonal facets by region growing against the seed plane, and each
//! facet's vertex cycle is recovered with a planar hull.

use super::hull2::hull2_indices;
use super::vector::Vector;
use super::GeomError;
use std::collections::BTreeMap;

/// A triangle of the raw (unmerged) hull, outward-oriented.
#[derive(Clone, Debug)]
pub struct HullFace {
    pub tri: [usize; 3],
    pub normal: Vector,
    pub offset: f64,
}

/// A polygonal facet after coplanar merging. `cycle` indexes the input point
/// slice and runs counter-clockwise as seen from outside.
#[derive(Clone, Debug)]
pub struct MergedFacet {
    pub normal: Vector,
    pub offset: f64,
    pub cycle: Vec<usize>,
}

#[derive(Clone)]
struct Face {
    v: [usize; 3],
    /// `nb[i]` is the face across the directed edge `(v[i], v[(i+1)%3])`.
    nb: [usize; 3],
    normal: Vector,
    offset: f64,
    conflicts: Vec<usize>,
    alive: bool,
}

impl Face {
    fn dist(&self, p: &Vector) -> f64 {
        self.normal.dot(p) - self.offset
    }
}

fn triangle_plane(pts: &[Vector], a: usize, b: usize, c: usize) -> Option<(Vector, f64)> {
    let n = pts[b].sub(&pts[a]).cross(&pts[c].sub(&pts[a]));
    let nn = n.norm();
    if nn <= f64::MIN_POSITIVE.sqrt() {
        return None;
    }
    let unit = n.scale(1.0 / nn);
    Some((unit, unit.dot(&pts[a])))
}

/// Quickhull. `pts` must be deduplicated, finite, and of affine rank 3
/// (callers establish this via the rank check in body construction).
pub fn hull3(pts: &[Vector], eps: f64) -> Result<Vec<HullFace>, GeomError> {
    let n = pts.len();
    if n < 4 {
        return Err(GeomError::HullFailure(format!(
            "need at least 4 points for a spatial hull, got {n}"
        )));
    }

    let (s0, s1, s2, s3) = initial_simplex(pts, eps)?;

    // Orient so that (s0, s1, s2) is counter-clockwise seen from outside,
    // i.e. s3 lies below the plane.
    let (mut a, mut b, c, d) = (s0, s1, s2, s3);
    let (pn, po) = triangle_plane(pts, a, b, c)
        .ok_or_else(|| GeomError::HullFailure("degenerate initial triangle".into()))?;
    if pn.dot(&pts[d]) - po > 0.0 {
        std::mem::swap(&mut a, &mut b);
    }
    let interior = pts[a]
        .add(&pts[b])
        .add(&pts[c])
        .add(&pts[d])
        .scale(0.25);

    let mut faces: Vec<Face> = Vec::new();
    let push_face = |faces: &mut Vec<Face>, t: [usize; 3]| -> Result<usize, GeomError> {
        let (mut nrm, mut off) = triangle_plane(pts, t[0], t[1], t[2])
            .ok_or_else(|| GeomError::HullFailure("degenerate face".into()))?;
        let mut tri = t;
        if nrm.dot(&interior) - off > 0.0 {
            tri = [t[0], t[2], t[1]];
            nrm = nrm.scale(-1.0);
            off = -off;
        }
        faces.push(Face {
            v: tri,
            nb: [usize::MAX; 3],
            normal: nrm,
            offset: off,
            conflicts: Vec::new(),
            alive: true,
        });
        Ok(faces.len() - 1)
    };

    for t in [[a, b, c], [a, d, b], [b, d, c], [c, d, a]] {
        push_face(&mut faces, t)?;
    }
    link_neighbors(&mut faces, &[0, 1, 2, 3])?;

    // Initial conflict assignment.
    let simplex = [a, b, c, d];
    for q in 0..n {
        if simplex.contains(&q) {
            continue;
        }
        assign_point(&mut faces, &[0, 1, 2, 3], pts, q, eps);
    }

    let mut stack: Vec<usize> = (0..4).filter(|&f| !faces[f].conflicts.is_empty()).collect();
    let mut guard = 0usize;
    let guard_max = 64 * n + 1024;

    while let Some(fi) = stack.pop() {
        if !faces[fi].alive || faces[fi].conflicts.is_empty() {
            continue;
        }
        guard += 1;
        if guard > guard_max {
            return Err(GeomError::HullFailure("insertion loop did not terminate".into()));
        }

        // Farthest conflict point of this face.
        let p_idx = {
            let f = &faces[fi];
            let mut best = f.conflicts[0];
            let mut best_d = f.dist(&pts[best]);
            for &q in &f.conflicts[1..] {
                let d = f.dist(&pts[q]);
                if d > best_d {
                    best = q;
                    best_d = d;
                }
            }
            best
        };
        let p = pts[p_idx];

        // Visible region: BFS over face adjacency.
        let mut visible = vec![fi];
        let mut seen = vec![false; faces.len()];
        seen[fi] = true;
        let mut qi = 0;
        while qi < visible.len() {
            let g = visible[qi];
            qi += 1;
            for e in 0..3 {
                let h = faces[g].nb[e];
                if h == usize::MAX || seen[h] {
                    continue;
                }
                if faces[h].alive && faces[h].dist(&p) > eps {
                    seen[h] = true;
                    visible.push(h);
                }
            }
        }

        // Horizon: edges of visible faces whose neighbor stayed hidden,
        // directed as they occur in the visible face.
        let mut horizon: Vec<(usize, usize, usize)> = Vec::new(); // (u, v, hidden face)
        for &g in &visible {
            for e in 0..3 {
                let h = faces[g].nb[e];
                if h == usize::MAX || !seen[h] {
                    let u = faces[g].v[e];
                    let v = faces[g].v[(e + 1) % 3];
                    horizon.push((u, v, h));
                }
            }
        }
        if horizon.is_empty() {
            return Err(GeomError::HullFailure("empty horizon".into()));
        }

        // Cone new faces over the horizon.
        let mut fresh: Vec<usize> = Vec::with_capacity(horizon.len());
        for &(u, v, hidden) in &horizon {
            let nf = push_face(&mut faces, [u, v, p_idx])?;
            let ne = edge_index(&faces[nf], u, v)
                .ok_or_else(|| GeomError::HullFailure("cone face flipped".into()))?;
            faces[nf].nb[ne] = hidden;
            if hidden != usize::MAX {
                let he = edge_index(&faces[hidden], v, u)
                    .ok_or_else(|| GeomError::HullFailure("broken horizon adjacency".into()))?;
                faces[hidden].nb[he] = nf;
            }
            fresh.push(nf);
        }
        // Link the fresh faces to each other along the edges through p.
        let mut open: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        for &nf in &fresh {
            for e in 0..3 {
                if faces[nf].nb[e] != usize::MAX {
                    continue;
                }
                let u = faces[nf].v[e];
                let v = faces[nf].v[(e + 1) % 3];
                if let Some((of, oe)) = open.remove(&(v, u)) {
                    faces[nf].nb[e] = of;
                    faces[of].nb[oe] = nf;
                } else {
                    open.insert((u, v), (nf, e));
                }
            }
        }
        if !open.is_empty() {
            return Err(GeomError::HullFailure("horizon loop did not close".into()));
        }

        // Re-home orphaned conflict points.
        let mut orphans: Vec<usize> = Vec::new();
        for &g in &visible {
            orphans.append(&mut faces[g].conflicts);
            faces[g].alive = false;
        }
        for q in orphans {
            if q == p_idx {
                continue;
            }
            assign_point(&mut faces, &fresh, pts, q, eps);
        }
        for &nf in &fresh {
            if !faces[nf].conflicts.is_empty() {
                stack.push(nf);
            }
        }
    }

    Ok(faces
        .into_iter()
        .filter(|f| f.alive)
        .map(|f| HullFace { tri: f.v, normal: f.normal, offset: f.offset })
        .collect())
}

/// Assigns `q` to the candidate face it sees from farthest away; points
/// within `eps` of every candidate are dropped (interior or on the hull).
fn assign_point(faces: &mut [Face], candidates: &[usize], pts: &[Vector], q: usize, eps: f64) {
    let mut best: Option<(usize, f64)> = None;
    for &fi in candidates {
        if !faces[fi].alive {
            continue;
        }
        let d = faces[fi].dist(&pts[q]);
        if d > eps && best.is_none_or(|(_, bd)| d > bd) {
            best = Some((fi, d));
        }
    }
    if let Some((fi, _)) = best {
        faces[fi].conflicts.push(q);
    }
}

fn edge_index(f: &Face, u: usize, v: usize) -> Option<usize> {
    (0..3).find(|&e| f.v[e] == u && f.v[(e + 1) % 3] == v)
}

/// Links neighbor pointers among `which` faces by matching directed edges.
fn link_neighbors(faces: &mut [Face], which: &[usize]) -> Result<(), GeomError> {
    let mut map: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for &fi in which {
        for e in 0..3 {
            let u = faces[fi].v[e];
            let v = faces[fi].v[(e + 1) % 3];
            if let Some((of, oe)) = map.remove(&(v, u)) {
                faces[fi].nb[e] = of;
                faces[of].nb[oe] = fi;
            } else {
                map.insert((u, v), (fi, e));
            }
        }
    }
    if map.is_empty() {
        Ok(())
    } else {
        Err(GeomError::HullFailure("initial simplex is not watertight".into()))
    }
}

/// Picks four points of maximal spread: lexicographic minimum, farthest
/// point, farthest from their line, farthest from their plane.
fn initial_simplex(pts: &[Vector], eps: f64) -> Result<(usize, usize, usize, usize), GeomError> {
    let s0 = (0..pts.len())
        .min_by(|&i, &j| pts[i].lex_cmp(&pts[j]))
        .expect("nonempty");
    let (s1, d1) = (0..pts.len())
        .map(|i| (i, pts[i].dist(&pts[s0])))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty");
    if d1 <= eps {
        return Err(GeomError::HullFailure("points coincide".into()));
    }
    let axis = pts[s1].sub(&pts[s0]).scale(1.0 / d1);
    let line_dist = |i: usize| {
        let w = pts[i].sub(&pts[s0]);
        w.sub(&axis.scale(w.dot(&axis))).norm()
    };
    let (s2, d2) = (0..pts.len())
        .map(|i| (i, line_dist(i)))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty");
    if d2 <= eps {
        return Err(GeomError::HullFailure("points are collinear".into()));
    }
    let (pn, po) = triangle_plane(pts, s0, s1, s2)
        .ok_or_else(|| GeomError::HullFailure("degenerate base triangle".into()))?;
    let (s3, d3) = (0..pts.len())
        .map(|i| (i, (pn.dot(&pts[i]) - po).abs()))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty");
    if d3 <= eps {
        return Err(GeomError::HullFailure("points are coplanar".into()));
    }
    Ok((s0, s1, s2, s3))
}

/// Merges coplanar adjacent triangles into polygonal facets and recovers
/// each facet's counter-clockwise vertex cycle.
pub fn merge_coplanar(pts: &[Vector], faces: &[HullFace], eps: f64) -> Vec<MergedFacet> {
    let scale = pts
        .iter()
        .flat_map(|p| p.as_slice().iter().map(|c| c.abs()))
        .fold(1.0_f64, f64::max);
    let eps_plane = eps * scale;

    // Face adjacency through shared undirected edges.
    let mut edge_map: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for e in 0..3 {
            let u = f.tri[e];
            let v = f.tri[(e + 1) % 3];
            let key = (u.min(v), u.max(v));
            edge_map.entry(key).or_default().push(fi);
        }
    }
    let neighbors = |fi: usize| -> Vec<usize> {
        let f = &faces[fi];
        let mut out = Vec::new();
        for e in 0..3 {
            let u = f.tri[e];
            let v = f.tri[(e + 1) % 3];
            let key = (u.min(v), u.max(v));
            for &g in &edge_map[&key] {
                if g != fi {
                    out.push(g);
                }
            }
        }
        out
    };

    let mut group = vec![usize::MAX; faces.len()];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for seed in 0..faces.len() {
        if group[seed] != usize::MAX {
            continue;
        }
        let gid = groups.len();
        let seed_n = faces[seed].normal;
        let seed_off = faces[seed].offset;
        let mut members = vec![seed];
        group[seed] = gid;
        let mut qi = 0;
        while qi < members.len() {
            let g = members[qi];
            qi += 1;
            for h in neighbors(g) {
                if group[h] != usize::MAX {
                    continue;
                }
                let coplanar = faces[h].normal.dot(&seed_n) > 0.5
                    && faces[h]
                        .tri
                        .iter()
                        .all(|&v| (seed_n.dot(&pts[v]) - seed_off).abs() <= eps_plane);
                if coplanar {
                    group[h] = gid;
                    members.push(h);
                }
            }
        }
        groups.push(members);
    }

    let mut out = Vec::with_capacity(groups.len());
    for members in &groups {
        // Area-weighted plane refit keeps the facet stable when the seed
        // triangle is a sliver.
        let mut nsum = Vector::zero(3);
        for &fi in members {
            let t = faces[fi].tri;
            let area2 = pts[t[1]].sub(&pts[t[0]]).cross(&pts[t[2]].sub(&pts[t[0]]));
            nsum = nsum.add(&area2);
        }
        let normal = match nsum.normalized(f64::MIN_POSITIVE.sqrt()) {
            Some(u) => u,
            None => faces[members[0]].normal,
        };
        let mut verts: Vec<usize> = members
            .iter()
            .flat_map(|&fi| faces[fi].tri.iter().copied())
            .collect();
        verts.sort_unstable();
        verts.dedup();
        let offset = verts.iter().map(|&v| normal.dot(&pts[v])).sum::<f64>() / verts.len() as f64;

        // Planar basis with e1 x e2 = normal, so the planar hull's CCW order
        // is CCW seen from outside.
        let t0 = faces[members[0]].tri;
        let e1 = pts[t0[1]]
            .sub(&pts[t0[0]])
            .normalized(f64::MIN_POSITIVE.sqrt())
            .expect("hull edge has positive length");
        let e2 = normal.cross(&e1);
        let projected: Vec<Vector> = verts
            .iter()
            .map(|&v| Vector::new2(pts[v].dot(&e1), pts[v].dot(&e2)))
            .collect();
        let cycle: Vec<usize> = hull2_indices(&projected, eps * scale.max(1.0))
            .into_iter()
            .map(|i| verts[i])
            .collect();
        out.push(MergedFacet { normal, offset, cycle });
    }
    out
}
