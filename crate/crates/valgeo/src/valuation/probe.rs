//! Empirical probe of `k`-strict monotonicity.
//!
//! A valuation is `k`-strictly monotone when `φ(K) < φ(L)` for every
//! strictly nested pair `K ⊊ L` of bodies with affine dimension at least
//! `k`. The probe samples such pairs (a random body of affine dimension
//! drawn from `{max(k,1), …, n}`, shrunk about its centroid) and reports
//! the smallest observed gap `φ(L) − φ(K)`; a non-positive minimum
//! witnesses failure. Volume, for instance, passes at `k = n` but fails at
//! `k = 1` the moment a nested segment pair appears.

use super::Valuation;
use crate::sample::{random_body_of_dim, rng};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Outcome of a monotonicity probe.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ProbeReport {
    pub trials: usize,
    pub k: usize,
    pub min_gap: f64,
    pub pass: bool,
}

/// Samples `trials` strictly nested pairs in ambient dimension `dim` with
/// affine dimension at least `k` and reports the minimum of `φ(L) − φ(K)`.
pub fn monotonicity_probe(
    phi: &Valuation,
    dim: usize,
    k: usize,
    trials: usize,
    seed: u64,
) -> ProbeReport {
    assert!(trials > 0, "need at least one trial");
    assert!(k <= dim, "monotonicity degree exceeds ambient dimension");
    let mut r = rng(seed);
    let mut min_gap = f64::INFINITY;
    for _ in 0..trials {
        // Points cannot nest strictly, so the affine dimension starts at 1.
        let d = r.gen_range(k.max(1)..=dim);
        let outer = random_body_of_dim(dim, d, &mut r);
        let s = r.gen_range(0.3..0.9);
        let inner = outer.scale_about(&outer.centroid(), s);
        let gap = phi.eval(&outer) - phi.eval(&inner);
        min_gap = min_gap.min(gap);
    }
    ProbeReport { trials, k, min_gap, pass: min_gap > 0.0 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volume_is_strict_at_full_dimension() {
        let report = monotonicity_probe(&Valuation::volume(2), 2, 2, 500, 0);
        assert!(report.pass, "min gap {}", report.min_gap);
        assert!(report.min_gap > 0.0);
    }

    #[test]
    fn volume_fails_below_full_dimension() {
        // Nested segments have equal (zero) volume; the probe must see one.
        let report = monotonicity_probe(&Valuation::volume(2), 2, 1, 200, 1);
        assert!(!report.pass);
        assert!(report.min_gap.abs() < 1e-12);
    }

    #[test]
    fn v1_is_strict_from_dimension_one() {
        let phi = Valuation::intrinsic(2, 1).unwrap();
        let report = monotonicity_probe(&phi, 2, 1, 300, 2);
        assert!(report.pass, "min gap {}", report.min_gap);
    }

    #[test]
    fn v2_in_threespace_is_strict_from_dimension_two() {
        let phi = Valuation::intrinsic(3, 2).unwrap();
        let report = monotonicity_probe(&phi, 3, 2, 100, 3);
        assert!(report.pass, "min gap {}", report.min_gap);
        // ... but fails when segments are allowed in.
        let report = monotonicity_probe(&phi, 3, 1, 100, 4);
        assert!(!report.pass);
    }

    #[test]
    fn nested_full_dim_pair_with_degenerate_inner_body() {
        // A segment inside a square still yields a positive volume gap
        // (Vol(L) > 0 = Vol(K)); strictness only breaks on pairs that are
        // both lower-dimensional.
        let phi = Valuation::volume(2);
        let square = crate::geom::convex_hull(&[
            crate::geom::Vector::new2(0.0, 0.0),
            crate::geom::Vector::new2(1.0, 0.0),
            crate::geom::Vector::new2(1.0, 1.0),
            crate::geom::Vector::new2(0.0, 1.0),
        ])
        .unwrap();
        let seg = crate::geom::convex_hull(&[
            crate::geom::Vector::new2(0.2, 0.2),
            crate::geom::Vector::new2(0.8, 0.8),
        ])
        .unwrap();
        let gap = phi.eval(&square) - phi.eval(&seg);
        assert_eq!(gap, 1.0);
        assert_eq!(phi.eval(&seg), 0.0);
    }
}
