//! Paths of convex bodies and their deviation lengths.
//!
//! A [`Segment`] interpolates two bodies by Minkowski combination,
//! `γ(t) = (1−t)·K + t·L`; a [`Path`] is a chain of such segments meeting
//! at shared endpoint bodies. Given a deviation `dev`, the length of a
//! path is the fine-partition limit of `Σⱼ dev(γ(q_{j−1}), γ(q_j))`,
//! approximated by dyadic refinement ([`length`]). Monotone segments
//! (nested endpoints) telescope, so their length collapses to the closed
//! form `|φ(start) − φ(end)|` at every refinement depth.
//!
//! [`build`] holds the canonical constructions: the join path through the
//! convex hull of the union, the meet path through the intersection, the
//! thickened-intersection path for degenerate meets, rounded bridges
//! between distant bodies, and bridging-body geodesics. [`bound`] provides
//! a support-integral lower bound valid for every path between two bodies.

pub mod bound;
pub mod build;
pub mod length;

pub use bound::{length_lower_bound, unit_circle_measure};
pub use build::{
    build_bridge_path, build_bridging_geodesic, build_join_path, build_meet_path,
    build_thickened_path, delta_sequence, find_bridging_body, spheropolyhedron,
    verify_bridging_body,
};
pub use length::{
    monotone_segment_length, partition_sums, path_length, segment_length, segment_length_with,
    EPS_LEN, MAX_DEPTH,
};

use crate::geom::{interpolate, is_subset, Body, GeomError};
use crate::tolerance::EPS_GEOM;
use crate::valuation::ValuationError;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PathError {
    #[error("paths need at least two bodies")]
    TooFewBodies,
    #[error("segment endpoints are not nested either way")]
    NotNested,
    #[error("breakpoints must be strictly increasing and match the segment count")]
    BadBreakpoints,
    #[error("refinement parameter {0} lies outside the path's parameter interval")]
    ParamOutsideRange(f64),
    #[error("intersection is empty")]
    EmptyIntersection,
    #[error(
        "intersection is not full-dimensional; use the thickened-path builder \
         (lower-dimensional meet) or the bridge builder (empty meet) instead"
    )]
    IntersectionNotFullDimensional,
    #[error("thickening radius must be positive and finite, got {0}")]
    BadDelta(f64),
    #[error("bridge body intersects an endpoint only degenerately (radius too small)")]
    DegenerateBridge,
    #[error("candidate bridging body rejected: {0}")]
    BridgeRejected(String),
    #[error("operation requires a full-dimensional body")]
    NotFullDimensional,
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
}

/// One interpolation segment `t ↦ (1−t)·start + t·end`.
#[derive(Clone, Debug)]
pub struct Segment {
    start: Body,
    end: Body,
    monotone: bool,
}

impl Segment {
    /// Builds a segment and records whether the endpoints are nested
    /// (either way) within the geometric tolerance.
    pub fn new(start: Body, end: Body) -> Result<Segment, GeomError> {
        if start.dim() != end.dim() {
            return Err(GeomError::DimensionMismatch(start.dim(), end.dim()));
        }
        let monotone =
            is_subset(&start, &end, EPS_GEOM) || is_subset(&end, &start, EPS_GEOM);
        Ok(Segment { start, end, monotone })
    }

    pub fn start(&self) -> &Body {
        &self.start
    }

    pub fn end(&self) -> &Body {
        &self.end
    }

    /// Whether the endpoints are nested; nested segments have exactly
    /// telescoping partition sums.
    pub fn is_monotone(&self) -> bool {
        self.monotone
    }

    /// The body at local parameter `t ∈ [0, 1]`.
    pub fn at(&self, t: f64) -> Result<Body, GeomError> {
        interpolate(&self.start, &self.end, t)
    }
}

/// A piecewise-interpolation path: segments chained at shared endpoint
/// bodies, parametrized over strictly increasing breakpoints.
#[derive(Clone, Debug)]
pub struct Path {
    segments: Vec<Segment>,
    breakpoints: Vec<f64>,
}

impl Path {
    /// Chains consecutive bodies into segments with breakpoints
    /// `0, 1, …, N`.
    pub fn from_bodies(bodies: &[Body]) -> Result<Path, PathError> {
        let breakpoints: Vec<f64> = (0..bodies.len()).map(|i| i as f64).collect();
        Path::from_bodies_with_breakpoints(bodies, &breakpoints)
    }

    /// Chains consecutive bodies with explicit breakpoints (one per body,
    /// strictly increasing).
    pub fn from_bodies_with_breakpoints(
        bodies: &[Body],
        breakpoints: &[f64],
    ) -> Result<Path, PathError> {
        if bodies.len() < 2 {
            return Err(PathError::TooFewBodies);
        }
        if breakpoints.len() != bodies.len()
            || breakpoints.windows(2).any(|w| w[0] >= w[1])
            || breakpoints.iter().any(|p| !p.is_finite())
        {
            return Err(PathError::BadBreakpoints);
        }
        let segments = bodies
            .windows(2)
            .map(|w| Segment::new(w[0].clone(), w[1].clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Path { segments, breakpoints: breakpoints.to_vec() })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// The chain of bodies: segment starts followed by the final end.
    pub fn bodies(&self) -> Vec<Body> {
        let mut out: Vec<Body> =
            self.segments.iter().map(|s| s.start.clone()).collect();
        out.push(self.segments.last().expect("paths are nonempty").end.clone());
        out
    }

    /// The body at a global parameter between the first and last
    /// breakpoint.
    pub fn at(&self, p: f64) -> Result<Body, PathError> {
        let (a, b) = (self.breakpoints[0], *self.breakpoints.last().expect("nonempty"));
        if !(a..=b).contains(&p) {
            return Err(PathError::ParamOutsideRange(p));
        }
        let idx = match self.breakpoints.windows(2).position(|w| p <= w[1]) {
            Some(i) => i,
            None => self.segments.len() - 1,
        };
        let (lo, hi) = (self.breakpoints[idx], self.breakpoints[idx + 1]);
        let t = ((p - lo) / (hi - lo)).clamp(0.0, 1.0);
        Ok(self.segments[idx].at(t)?)
    }

    /// A new path with extra breakpoints inserted (each splitting its
    /// segment at the interpolated body). Lengths are invariant under this
    /// refinement.
    pub fn refined(&self, extra: &[f64]) -> Result<Path, PathError> {
        let mut bodies = self.bodies();
        let mut breaks = self.breakpoints.clone();
        for &p in extra {
            let (a, b) = (breaks[0], *breaks.last().expect("nonempty"));
            if !(a..=b).contains(&p) {
                return Err(PathError::ParamOutsideRange(p));
            }
            if breaks.iter().any(|&q| (q - p).abs() < 1e-12) {
                continue;
            }
            let body = self.at(p)?;
            let pos = breaks.iter().position(|&q| q > p).expect("p < b");
            breaks.insert(pos, p);
            bodies.insert(pos, body);
        }
        Path::from_bodies_with_breakpoints(&bodies, &breaks)
    }
}

impl Serialize for Path {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Path", 1)?;
        s.serialize_field("bodies", &self.bodies())?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Path {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            bodies: Vec<Body>,
        }
        let r = Repr::deserialize(deserializer)?;
        Path::from_bodies(&r.bodies).map_err(|e| D::Error::custom(format!("invalid path: {e}")))
    }
}

/// A path or segment length obtained by dyadic refinement.
///
/// Every partition sum is a lower bound for the supremum over partitions,
/// so `value` together with `lower_bound_pairs` (the number of adjacent
/// pairs summed at the reported depth) forms a certificate. `converged`
/// records that the last two refinement depths agreed within
/// [`EPS_LEN`]-relative tolerance.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct LengthEstimate {
    pub value: f64,
    pub refinement_depth: usize,
    pub converged: bool,
    pub lower_bound_pairs: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{convex_hull, hausdorff_distance, Vector};

    fn square(x0: f64, y0: f64, x1: f64, y1: f64) -> Body {
        convex_hull(&[
            Vector::new2(x0, y0),
            Vector::new2(x1, y0),
            Vector::new2(x1, y1),
            Vector::new2(x0, y1),
        ])
        .unwrap()
    }

    #[test]
    fn segment_detects_nesting() {
        let k = square(0.0, 0.0, 1.0, 1.0);
        let l = square(-1.0, -1.0, 2.0, 2.0);
        assert!(Segment::new(k.clone(), l.clone()).unwrap().is_monotone());
        assert!(Segment::new(l.clone(), k.clone()).unwrap().is_monotone());
        let shifted = k.translate(&Vector::new2(0.5, 0.0));
        assert!(!Segment::new(k.clone(), shifted).unwrap().is_monotone());
    }

    #[test]
    fn segment_reproduces_endpoints() {
        let k = square(0.0, 0.0, 1.0, 1.0);
        let l = square(2.0, 0.0, 4.0, 2.0);
        let seg = Segment::new(k.clone(), l.clone()).unwrap();
        assert!(hausdorff_distance(&seg.at(0.0).unwrap(), &k).unwrap() < 1e-12);
        assert!(hausdorff_distance(&seg.at(1.0).unwrap(), &l).unwrap() < 1e-12);
    }

    #[test]
    fn path_parametrization_and_refinement() {
        let a = square(0.0, 0.0, 1.0, 1.0);
        let b = square(0.0, 0.0, 2.0, 2.0);
        let c = square(0.0, 0.0, 4.0, 4.0);
        let path = Path::from_bodies(&[a.clone(), b.clone(), c.clone()]).unwrap();
        assert_eq!(path.segments().len(), 2);
        assert_eq!(path.breakpoints(), &[0.0, 1.0, 2.0]);
        let mid = path.at(0.5).unwrap();
        assert!((mid.raw_volume() - 2.25).abs() < 1e-12, "side 1.5 square");

        let refined = path.refined(&[0.5, 1.5]).unwrap();
        assert_eq!(refined.segments().len(), 4);
        assert!(
            hausdorff_distance(&refined.at(0.5).unwrap(), &mid).unwrap() < 1e-12,
            "refinement preserves the traced bodies"
        );
        assert!(path.refined(&[3.0]).is_err());
    }

    #[test]
    fn path_requires_two_bodies_and_ordered_breakpoints() {
        let a = square(0.0, 0.0, 1.0, 1.0);
        assert!(matches!(
            Path::from_bodies(std::slice::from_ref(&a)),
            Err(PathError::TooFewBodies)
        ));
        assert!(matches!(
            Path::from_bodies_with_breakpoints(
                &[a.clone(), a.clone()],
                &[1.0, 0.0]
            ),
            Err(PathError::BadBreakpoints)
        ));
    }

    #[test]
    fn path_json_round_trip() {
        let a = square(0.0, 0.0, 1.0, 1.0);
        let b = square(1.0, 0.0, 2.0, 1.0);
        let path = Path::from_bodies(&[a, b]).unwrap();
        let txt = serde_json::to_string(&path).unwrap();
        let back: Path = serde_json::from_str(&txt).unwrap();
        assert_eq!(back.segments().len(), 1);
        assert_eq!(back.bodies()[0].vertices(), path.bodies()[0].vertices());
    }
}
