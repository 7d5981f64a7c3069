//! Monte-Carlo estimation of intrinsic volumes from random projections.
//!
//! The projection-average representation
//! `V_i(K) = C(n,i) · κ_n / (κ_i κ_{n−i}) · E[Vol_i(K | ξ)]`,
//! with `ξ` a uniformly random `i`-dimensional subspace, gives an estimator
//! for `V_i` that shares no machinery with the Steiner-polynomial fit; the
//! two serve as independent cross-checks of each other.

use super::{kappa, ValuationError};
use crate::geom::hull2::hull2_indices;
use crate::geom::{Body, Vector};
use crate::sample::{random_frame, rng};
use serde::{Deserialize, Serialize};

/// Monte-Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct KubotaEstimate {
    pub value: f64,
    pub std_error: f64,
}

impl KubotaEstimate {
    /// `|value − reference|` in units of the standard error.
    pub fn sigma_distance(&self, reference: f64) -> f64 {
        (self.value - reference).abs() / self.std_error
    }
}

fn binomial(n: usize, i: usize) -> f64 {
    match (n, i) {
        (2, 1) => 2.0,
        (3, 1) | (3, 2) => 3.0,
        _ => unreachable!("1 ≤ i ≤ n−1 with n ∈ {{2, 3}}"),
    }
}

/// Estimates `V_i(K)` for `1 ≤ i ≤ n−1` by averaging projection volumes
/// over `samples` random subspaces. Deterministic per seed: a single
/// sequential stream with running-moment accumulation.
pub fn kubota_estimate(
    k: &Body,
    i: usize,
    samples: usize,
    seed: u64,
) -> Result<KubotaEstimate, ValuationError> {
    let n = k.dim();
    if i < 1 || i + 1 > n {
        return Err(ValuationError::IndexOutOfRange { i, n });
    }
    if !k.is_full_dimensional() {
        return Err(ValuationError::NotFullDimensional);
    }
    if samples == 0 {
        return Err(ValuationError::NoSamples);
    }

    let coeff = binomial(n, i) * kappa(n) / (kappa(i) * kappa(n - i));
    let mut r = rng(seed);
    let mut mean = 0.0;
    let mut m2 = 0.0;
    let mut scratch: Vec<Vector> = Vec::with_capacity(k.vertices().len());
    for s in 1..=samples {
        let frame = random_frame(n, &mut r);
        let proj = match i {
            1 => projection_length(k, &frame[0]),
            _ => projection_area(k, &frame[0], &frame[1], &mut scratch),
        };
        let x = coeff * proj;
        let delta = x - mean;
        mean += delta / s as f64;
        m2 += delta * (x - mean);
    }
    let std_error = if samples > 1 {
        (m2 / (samples as f64 - 1.0) / samples as f64).sqrt()
    } else {
        f64::INFINITY
    };
    Ok(KubotaEstimate { value: mean, std_error })
}

fn projection_length(k: &Body, u: &Vector) -> f64 {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in k.vertices() {
        let d = v.dot(u);
        lo = lo.min(d);
        hi = hi.max(d);
    }
    hi - lo
}

fn projection_area(k: &Body, e1: &Vector, e2: &Vector, scratch: &mut Vec<Vector>) -> f64 {
    scratch.clear();
    scratch.extend(k.vertices().iter().map(|v| Vector::new2(v.dot(e1), v.dot(e2))));
    let cycle = hull2_indices(scratch, 1e-12);
    let m = cycle.len();
    if m < 3 {
        return 0.0;
    }
    let mut a2 = 0.0;
    for j in 0..m {
        a2 += scratch[cycle[j]].cross2(&scratch[cycle[(j + 1) % m]]);
    }
    a2 / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::convex_hull;

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
    fn v1_of_the_unit_square() {
        let est = kubota_estimate(&square01(), 1, 20_000, 0).unwrap();
        assert!(est.sigma_distance(2.0) < 3.0, "estimate {} ± {}", est.value, est.std_error);
        assert!(est.std_error < 0.01);
    }

    #[test]
    fn v1_is_translation_invariant_within_noise() {
        let k = square01();
        let moved = k.translate(&Vector::new2(5.0, -2.0));
        let a = kubota_estimate(&k, 1, 20_000, 1).unwrap();
        let b = kubota_estimate(&moved, 1, 20_000, 2).unwrap();
        let combined = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
        assert!((a.value - b.value).abs() < 3.0 * combined);
    }

    #[test]
    fn v1_and_v2_of_the_cube() {
        let est1 = kubota_estimate(&cube01(), 1, 20_000, 3).unwrap();
        assert!(est1.sigma_distance(3.0) < 3.0, "V₁ estimate {}", est1.value);
        let est2 = kubota_estimate(&cube01(), 2, 20_000, 4).unwrap();
        assert!(est2.sigma_distance(3.0) < 3.0, "V₂ estimate {}", est2.value);
    }

    #[test]
    fn same_seed_reproduces_bit_identical_results() {
        let a = kubota_estimate(&cube01(), 2, 5_000, 42).unwrap();
        let b = kubota_estimate(&cube01(), 2, 5_000, 42).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
        let c = kubota_estimate(&cube01(), 2, 5_000, 43).unwrap();
        assert_ne!(a.value.to_bits(), c.value.to_bits());
    }

    #[test]
    fn rejects_invalid_indices_and_bodies() {
        assert!(matches!(
            kubota_estimate(&square01(), 0, 10, 0),
            Err(ValuationError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            kubota_estimate(&square01(), 2, 10, 0),
            Err(ValuationError::IndexOutOfRange { .. })
        ));
        let seg = convex_hull(&[Vector::new2(0.0, 0.0), Vector::new2(1.0, 0.0)]).unwrap();
        assert!(matches!(
            kubota_estimate(&seg, 1, 10, 0),
            Err(ValuationError::NotFullDimensional)
        ));
        assert!(matches!(
            kubota_estimate(&square01(), 1, 0, 0),
            Err(ValuationError::NoSamples)
        ));
    }
}
