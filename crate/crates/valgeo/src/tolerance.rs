//! Numerical tolerances shared across the crate.
//!
//! All geometric predicates are tolerance-based: a point lies on a plane when
//! its signed distance is below `eps_geom`, a singular value counts towards
//! the affine rank when it exceeds `eps_rank`, and volumes below `eps_vol`
//! are treated as zero. The defaults are far below the feature sizes used by
//! the experiments (bodies have diameters between roughly 1e-3 and 10), so
//! predicates are stable without per-call tuning.

use serde::{Deserialize, Serialize};

/// Positive thresholds for geometric predicates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Distance threshold for incidence predicates (point on plane, point in
    /// halfspace, vertex deduplication).
    pub eps_geom: f64,
    /// Singular-value threshold for the numerical affine rank of a vertex
    /// set.
    pub eps_rank: f64,
    /// Volumes with absolute value below this are treated as zero.
    pub eps_vol: f64,
}

/// Default incidence tolerance.
pub const EPS_GEOM: f64 = 1e-9;
/// Default affine-rank tolerance.
pub const EPS_RANK: f64 = 1e-8;
/// Default volume-is-zero tolerance.
pub const EPS_VOL: f64 = 1e-9;

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eps_geom: EPS_GEOM,
            eps_rank: EPS_RANK,
            eps_vol: EPS_VOL,
        }
    }
}

impl ToleranceConfig {
    /// Checks that every threshold is strictly positive.
    pub fn validate(&self) -> Result<(), String> {
        for (name, v) in [
            ("eps_geom", self.eps_geom),
            ("eps_rank", self.eps_rank),
            ("eps_vol", self.eps_vol),
        ] {
            if v <= 0.0 || !v.is_finite() {
                return Err(format!("tolerance {name} must be strictly positive, got {v}"));
            }
        }
        Ok(())
    }
}
