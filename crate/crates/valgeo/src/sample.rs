//! Seeded random generators for bodies, directions, and subspace frames.
//!
//! Everything here is driven by an explicit [`ChaCha8Rng`] so that
//! experiments are reproducible: the same seed yields bit-identical bodies
//! and frames regardless of platform.

use crate::geom::{convex_hull, Body, Vector};
use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Deterministic generator for a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform direction on the unit sphere (Gaussian normalization).
pub fn random_unit_vector<R: Rng>(dim: usize, rng: &mut R) -> Vector {
    loop {
        let mut c = [0.0_f64; 3];
        for x in c.iter_mut().take(dim) {
            *x = rng.sample(StandardNormal);
        }
        let v = Vector::from_slice(&c[..dim]).expect("dim is 2 or 3");
        if let Some(u) = v.normalized(1e-9) {
            return u;
        }
    }
}

/// Haar-distributed orthonormal frame (columns of Q from a QR factorization
/// of a Gaussian matrix, signs fixed so the diagonal of R is positive).
pub fn random_frame<R: Rng>(dim: usize, rng: &mut R) -> Vec<Vector> {
    let g = DMatrix::from_fn(dim, dim, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    (0..dim)
        .map(|j| {
            let sign = if r[(j, j)] < 0.0 { -1.0 } else { 1.0 };
            let mut c = [0.0_f64; 3];
            for i in 0..dim {
                c[i] = sign * q[(i, j)];
            }
            Vector::from_slice(&c[..dim]).expect("dim is 2 or 3")
        })
        .collect()
}

/// Random full-dimensional polytope: hull of 10–20 uniform points in the
/// box `[−1, 1]^dim` (regenerated in the measure-zero degenerate case).
pub fn random_polytope<R: Rng>(dim: usize, rng: &mut R) -> Body {
    loop {
        let n = rng.gen_range(10..=20);
        let pts: Vec<Vector> = (0..n)
            .map(|_| {
                let mut c = [0.0_f64; 3];
                for x in c.iter_mut().take(dim) {
                    *x = rng.gen_range(-1.0..1.0);
                }
                Vector::from_slice(&c[..dim]).expect("dim is 2 or 3")
            })
            .collect();
        if let Ok(k) = convex_hull(&pts) {
            if k.is_full_dimensional() {
                return k;
            }
        }
    }
}

/// Strictly nested pair `(K, L)` with `K ⊊ L`: `L` is a random polytope and
/// `K = c + s·(L − c)` for the centroid `c` and a shrink factor
/// `s ∈ [0.3, 0.9]`.
pub fn random_nested_pair<R: Rng>(dim: usize, rng: &mut R) -> (Body, Body) {
    let l = random_polytope(dim, rng);
    let s = rng.gen_range(0.3..0.9);
    let k = l.scale_about(&l.centroid(), s);
    (k, l)
}

/// Random body of prescribed affine dimension `affine ≤ dim`, built from
/// 10–20 points in a random `affine`-dimensional flat through a random
/// offset.
pub fn random_body_of_dim<R: Rng>(dim: usize, affine: usize, rng: &mut R) -> Body {
    assert!(affine <= dim, "affine dimension exceeds ambient dimension");
    if affine == dim {
        return random_polytope(dim, rng);
    }
    loop {
        let frame = random_frame(dim, rng);
        let mut offset = [0.0_f64; 3];
        for x in offset.iter_mut().take(dim) {
            *x = rng.gen_range(-1.0..1.0);
        }
        let origin = Vector::from_slice(&offset[..dim]).expect("dim is 2 or 3");
        let n = if affine == 0 { 1 } else { rng.gen_range(10..=20) };
        let pts: Vec<Vector> = (0..n)
            .map(|_| {
                let mut p = origin;
                for axis in frame.iter().take(affine) {
                    p = p.add(&axis.scale(rng.gen_range(-1.0..1.0)));
                }
                p
            })
            .collect();
        if let Ok(k) = convex_hull(&pts) {
            if k.affine_dim() == affine {
                return k;
            }
        }
    }
}
