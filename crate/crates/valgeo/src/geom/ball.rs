//! Inscribed polytopal approximations of Euclidean balls.
//!
//! In the plane the approximation is the regular `m`-gon with a vertex on
//! the positive x-axis; its support function underestimates the true ball
//! by at most `r·(1 − cos(π/m))`. In 3-space it is the hull of a
//! repeatedly subdivided icosahedron (vertex counts 12, 42, 162, 642,
//! 2562, …), subdivided until at least `m` vertices are reached. All
//! vertices lie exactly on the sphere, so the approximation is inscribed.
//!
//! Unit balls are cached per `(dim, refinement)`; requested balls are
//! produced by exact homothety and translation, which preserve the hull
//! combinatorics.

use super::body::{convex_hull, Body};
use super::vector::Vector;
use super::GeomError;
use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

/// Inscribed polytopal ball with center `c`, radius `r`, and at least `m`
/// vertices (exactly `m` in 2D).
pub fn ball_approx(c: &Vector, r: f64, m: usize) -> Result<Body, GeomError> {
    if r <= 0.0 || !r.is_finite() {
        return Err(GeomError::BadRadius(r));
    }
    let dim = c.dim();
    let min = match dim {
        2 => 3,
        3 => 4,
        d => return Err(GeomError::UnsupportedDimension(d)),
    };
    if m < min {
        return Err(GeomError::TooFewBallVertices { min, got: m });
    }
    let unit = cached_unit_ball(dim, m)?;
    Ok(unit.scale_about(&Vector::zero(dim), r).translate(c))
}

fn cached_unit_ball(dim: usize, m: usize) -> Result<Body, GeomError> {
    static CACHE: OnceLock<Mutex<BTreeMap<(usize, usize), Body>>> = OnceLock::new();
    let key = match dim {
        2 => (2, m),
        _ => (3, icosphere_level_for(m)),
    };
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    let mut guard = cache.lock().expect("ball cache poisoned");
    if let Some(b) = guard.get(&key) {
        return Ok(b.clone());
    }
    let b = match dim {
        2 => unit_polygon(m)?,
        _ => unit_icosphere(key.1)?,
    };
    guard.insert(key, b.clone());
    Ok(b)
}

fn unit_polygon(m: usize) -> Result<Body, GeomError> {
    let pts: Vec<Vector> = (0..m)
        .map(|j| {
            let a = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
            Vector::new2(a.cos(), a.sin())
        })
        .collect();
    convex_hull(&pts)
}

/// Smallest subdivision level whose vertex count `10·4^level + 2` reaches
/// `m`.
fn icosphere_level_for(m: usize) -> usize {
    let mut level = 0;
    while 10 * 4usize.pow(level as u32) + 2 < m {
        level += 1;
    }
    level
}

fn unit_icosphere(level: usize) -> Result<Body, GeomError> {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let raw = [
        (-1.0, phi, 0.0),
        (1.0, phi, 0.0),
        (-1.0, -phi, 0.0),
        (1.0, -phi, 0.0),
        (0.0, -1.0, phi),
        (0.0, 1.0, phi),
        (0.0, -1.0, -phi),
        (0.0, 1.0, -phi),
        (phi, 0.0, -1.0),
        (phi, 0.0, 1.0),
        (-phi, 0.0, -1.0),
        (-phi, 0.0, 1.0),
    ];
    let mut verts: Vec<Vector> = raw
        .iter()
        .map(|&(x, y, z)| {
            Vector::new3(x, y, z).normalized(1e-300).expect("icosahedron vertex")
        })
        .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];

    for _ in 0..level {
        let mut midpoints: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut next_faces = Vec::with_capacity(4 * faces.len());
        for f in &faces {
            let mids: Vec<usize> = (0..3)
                .map(|i| {
                    let a = f[i];
                    let b = f[(i + 1) % 3];
                    let key = (a.min(b), a.max(b));
                    *midpoints.entry(key).or_insert_with(|| {
                        let p = verts[a]
                            .lerp(&verts[b], 0.5)
                            .normalized(1e-300)
                            .expect("sphere midpoint");
                        verts.push(p);
                        verts.len() - 1
                    })
                })
                .collect();
            next_faces.push([f[0], mids[0], mids[2]]);
            next_faces.push([f[1], mids[1], mids[0]]);
            next_faces.push([f[2], mids[2], mids[1]]);
            next_faces.push([mids[0], mids[1], mids[2]]);
        }
        faces = next_faces;
    }
    convex_hull(&verts)
}
