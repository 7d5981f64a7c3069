//! Numerical extraction of the homogeneous decomposition of a valuation.
//!
//! Every valuation on convex bodies splits into homogeneous components,
//! `φ = Σ_{i=0}^{n} φ_i` with `φ_i(tK) = tⁱ φ_i(K)`. Evaluating `φ(tK)`
//! at the integer scales `t = 1 … n+1` therefore yields a Vandermonde
//! system whose solution is the component values `φ_i(K)`.

use super::{Valuation, ValuationError};
use crate::geom::{Body, Vector};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

/// Degree-indexed component values `φ_0(K) … φ_n(K)`; their sum is `φ(K)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomogeneousDecomposition {
    components: Vec<f64>,
}

impl HomogeneousDecomposition {
    pub fn new(components: Vec<f64>) -> Self {
        HomogeneousDecomposition { components }
    }

    /// Highest degree in the decomposition (the ambient dimension).
    pub fn max_degree(&self) -> usize {
        self.components.len() - 1
    }

    /// Value of the degree-`i` component.
    pub fn component(&self, i: usize) -> f64 {
        self.components[i]
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    /// Sum of all components, which must reproduce `φ(K)`.
    pub fn total(&self) -> f64 {
        self.components.iter().sum()
    }
}

/// Solves `φ(tK) = Σ_i tⁱ φ_i(K)` for `t = 1 … n+1` (scaling about the
/// origin). When `φ` is declared strictly monotone the degree-0 component
/// is pinned to zero (a point has `φ = 0` for such valuations) and the
/// remaining degrees are recovered by least squares from the same samples,
/// which is exact for polynomial data.
pub fn mcmullen_decompose(
    phi: &Valuation,
    k: &Body,
) -> Result<HomogeneousDecomposition, ValuationError> {
    let n = k.dim();
    let origin = Vector::zero(n);
    let ts: Vec<f64> = (1..=n + 1).map(|t| t as f64).collect();
    let vals: Vec<f64> = ts.iter().map(|&t| phi.eval(&k.scale_about(&origin, t))).collect();

    let pin_zero = phi.monotone_strict_k().is_some();
    let degrees: Vec<usize> = if pin_zero { (1..=n).collect() } else { (0..=n).collect() };

    let a = DMatrix::from_fn(ts.len(), degrees.len(), |r, c| ts[r].powi(degrees[c] as i32));
    let b = DVector::from_vec(vals);
    let sol = if a.nrows() == a.ncols() {
        a.lu().solve(&b).ok_or(ValuationError::SingularFit)?
    } else {
        a.svd(true, true).solve(&b, 1e-12).map_err(|_| ValuationError::SingularFit)?
    };

    let mut components = vec![0.0; n + 1];
    for (slot, &deg) in degrees.iter().enumerate() {
        components[deg] = sol[slot];
    }
    Ok(HomogeneousDecomposition::new(components))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::convex_hull;
    use crate::valuation::{firey_valuation, MixedAreaMeasure2D};

    fn square01() -> Body {
        convex_hull(&[
            Vector::new2(0.0, 0.0),
            Vector::new2(1.0, 0.0),
            Vector::new2(1.0, 1.0),
            Vector::new2(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn volume_plus_v1_splits_into_expected_degrees() {
        // φ(tK) = t² + 2t on the unit square, so φ₀ = 0, φ₁ = 2, φ₂ = 1.
        let phi = Valuation::sum(&Valuation::volume(2), &Valuation::intrinsic(2, 1).unwrap());
        let dec = mcmullen_decompose(&phi, &square01()).unwrap();
        assert!(dec.component(0).abs() < 1e-7);
        assert!((dec.component(1) - 2.0).abs() < 1e-7);
        assert!((dec.component(2) - 1.0).abs() < 1e-7);
        assert!((dec.total() - phi.eval(&square01())).abs() < 1e-7);
    }

    #[test]
    fn pure_volume_concentrates_in_top_degree() {
        let phi = Valuation::volume(2);
        let dec = mcmullen_decompose(&phi, &square01()).unwrap();
        assert_eq!(dec.component(0), 0.0, "pinned for strictly monotone φ");
        assert!(dec.component(1).abs() < 1e-9);
        assert!((dec.component(2) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn firey_valuation_is_purely_degree_one() {
        let m = MixedAreaMeasure2D::from_polygon(&square01()).unwrap();
        let phi = firey_valuation(m);
        let dec = mcmullen_decompose(&phi, &square01()).unwrap();
        assert!(dec.component(0).abs() < 1e-9);
        assert!((dec.component(1) - phi.eval(&square01())).abs() < 1e-9);
        assert!(dec.component(2).abs() < 1e-9);
    }

    #[test]
    fn decomposition_in_threespace() {
        let mut pts = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    pts.push(Vector::new3(x, y, z));
                }
            }
        }
        let cube = convex_hull(&pts).unwrap();
        let phi = Valuation::volume(3);
        let dec = mcmullen_decompose(&phi, &cube).unwrap();
        assert!((dec.component(3) - 1.0).abs() < 1e-9);
        assert!(dec.component(1).abs() < 1e-9);
        assert!(dec.component(2).abs() < 1e-9);
    }

    #[test]
    fn sum_of_components_reproduces_phi_without_pinning() {
        // A non-monotone declared valuation keeps the free degree-0 slot.
        let phi = Valuation::new("affine-ish", |k: &Body| 3.0 + super::super::volume(k), None, None);
        let dec = mcmullen_decompose(&phi, &square01()).unwrap();
        assert!((dec.component(0) - 3.0).abs() < 1e-7);
        assert!((dec.component(2) - 1.0).abs() < 1e-7);
        assert!((dec.total() - phi.eval(&square01())).abs() < 1e-7);
    }
}
