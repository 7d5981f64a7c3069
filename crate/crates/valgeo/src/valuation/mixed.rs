//! Planar mixed volumes and the support-integral valuations they generate.
//!
//! For convex bodies `K, G` in the plane the mixed volume is
//! `V(K, G) = (Vol(K + G) − Vol(K) − Vol(G)) / 2`. Fixing `G` and letting
//! `K` vary yields a 1-homogeneous monotone valuation, which can be written
//! as a support integral `φ(K) = ½ Σⱼ h_K(uⱼ) wⱼ` against the length
//! measure of `G` (atoms at the outward edge normals `uⱼ`, weighted by the
//! edge lengths `wⱼ`).

use super::{Valuation, ValuationError};
use crate::geom::{minkowski_sum, Body, Vector};
use serde::{Deserialize, Serialize};

/// Discrete boundary-length measure of a planar convex body: unit outward
/// normals paired with positive weights, summing to zero as vectors
/// (closedness of the generating polygon).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MixedAreaMeasure2D {
    atoms: Vec<(Vector, f64)>,
}

impl MixedAreaMeasure2D {
    /// Validates and wraps an atom list: nonempty, positive finite weights,
    /// unit normals, and `|Σ wⱼuⱼ| ≤ 1e−8`.
    pub fn new(atoms: Vec<(Vector, f64)>) -> Result<Self, ValuationError> {
        if atoms.is_empty() {
            return Err(ValuationError::EmptyMeasure);
        }
        let mut resultant = Vector::zero(2);
        for (u, w) in &atoms {
            if *w <= 0.0 || !w.is_finite() {
                return Err(ValuationError::BadWeight);
            }
            if (u.norm() - 1.0).abs() > 1e-9 || u.dim() != 2 {
                return Err(ValuationError::UnbalancedMeasure(f64::NAN));
            }
            resultant = resultant.add(&u.scale(*w));
        }
        let defect = resultant.norm();
        if defect > 1e-8 {
            return Err(ValuationError::UnbalancedMeasure(defect));
        }
        Ok(MixedAreaMeasure2D { atoms })
    }

    /// Length measure of a planar body: one atom per boundary edge (outward
    /// normal, edge length); a segment contributes both of its sides.
    pub fn from_polygon(g: &Body) -> Result<Self, ValuationError> {
        if g.dim() != 2 {
            return Err(ValuationError::WrongDimension { expected: 2, got: g.dim() });
        }
        match g.affine_dim() {
            0 => Err(ValuationError::EmptyMeasure),
            1 => {
                let a = g.vertices()[0];
                let b = g.vertices()[1];
                let w = a.dist(&b);
                let d = b.sub(&a).normalized(1e-300).expect("segment has length");
                let n = Vector::new2(d.y(), -d.x());
                MixedAreaMeasure2D::new(vec![(n, w), (n.scale(-1.0), w)])
            }
            _ => {
                let verts = g.vertices();
                let m = verts.len();
                let atoms = (0..m)
                    .map(|i| {
                        let a = verts[i];
                        let b = verts[(i + 1) % m];
                        let w = a.dist(&b);
                        let d = b.sub(&a).normalized(1e-300).expect("hull edges are nonzero");
                        (Vector::new2(d.y(), -d.x()), w)
                    })
                    .collect();
                MixedAreaMeasure2D::new(atoms)
            }
        }
    }

    pub fn atoms(&self) -> &[(Vector, f64)] {
        &self.atoms
    }

    /// `|Σ wⱼuⱼ|`, which must vanish for a measure of a closed boundary.
    pub fn closure_defect(&self) -> f64 {
        let mut r = Vector::zero(2);
        for (u, w) in &self.atoms {
            r = r.add(&u.scale(*w));
        }
        r.norm()
    }
}

/// Planar mixed volume `V(K, G) = (Vol(K+G) − Vol(K) − Vol(G)) / 2`.
pub fn mixed_volume_2d(k: &Body, g: &Body) -> Result<f64, ValuationError> {
    if k.dim() != 2 {
        return Err(ValuationError::WrongDimension { expected: 2, got: k.dim() });
    }
    if g.dim() != 2 {
        return Err(ValuationError::WrongDimension { expected: 2, got: g.dim() });
    }
    let sum = minkowski_sum(k, g)?;
    Ok((sum.raw_volume() - k.raw_volume() - g.raw_volume()) / 2.0)
}

/// The support-integral valuation `φ(K) = ½ Σⱼ h_K(uⱼ) wⱼ` of a measure:
/// 1-homogeneous and monotone; for the length measure of a polygon `G` it
/// coincides with `K ↦ mixed_volume_2d(K, G)`.
pub fn firey_valuation(measure: MixedAreaMeasure2D) -> Valuation {
    Valuation::new(
        "firey",
        move |k: &Body| {
            let mut acc = 0.0;
            for (u, w) in measure.atoms() {
                let h = k
                    .vertices()
                    .iter()
                    .map(|v| v.dot(u))
                    .fold(f64::NEG_INFINITY, f64::max);
                acc += h * w;
            }
            acc / 2.0
        },
        Some(1),
        None,
    )
}
