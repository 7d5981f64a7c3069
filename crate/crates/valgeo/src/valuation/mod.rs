//! Valuations on convex bodies: volume, intrinsic volumes, mean width,
//! planar mixed volumes and support-integral (Firey-type) valuations, a
//! Monte-Carlo projection estimator, homogeneous decompositions, and a
//! monotonicity probe.
//!
//! A valuation is a real set function `φ` on convex bodies with
//! `φ(K ∪ L) + φ(K ∩ L) = φ(K) + φ(L)` whenever the union is convex, and
//! `φ(∅) = 0`. The [`Valuation`] type wraps an evaluation closure together
//! with the declared homogeneity degree and the degree `k` of claimed
//! strict monotonicity (`φ(K) < φ(L)` for strictly nested bodies of affine
//! dimension at least `k`), when known.

mod intrinsic;
mod kubota;
mod mcmullen;
mod mixed;
mod probe;

pub use intrinsic::{
    default_radii, intrinsic_volume, mean_width, steiner_fit, volume,
};
pub use kubota::{kubota_estimate, KubotaEstimate};
pub use mcmullen::{mcmullen_decompose, HomogeneousDecomposition};
pub use mixed::{firey_valuation, mixed_volume_2d, MixedAreaMeasure2D};
pub use probe::{monotonicity_probe, ProbeReport};

use crate::geom::{Body, GeomError};
use std::f64::consts::PI;
use std::sync::Arc;
use thiserror::Error;

/// Volume of the unit ball in dimension `i ≤ 3`.
pub fn kappa(i: usize) -> f64 {
    match i {
        0 => 1.0,
        1 => 2.0,
        2 => PI,
        3 => 4.0 * PI / 3.0,
        _ => unreachable!("ambient dimension is at most 3"),
    }
}

#[derive(Debug, Error)]
pub enum ValuationError {
    #[error("intrinsic-volume index {i} out of range for dimension {n}")]
    IndexOutOfRange { i: usize, n: usize },
    #[error("operation requires a full-dimensional body")]
    NotFullDimensional,
    #[error("need at least {need} radii, got {got}")]
    TooFewRadii { need: usize, got: usize },
    #[error("singular fit: radii must be distinct and positive")]
    SingularFit,
    #[error("need at least one Monte-Carlo sample")]
    NoSamples,
    #[error("mixed-area measure needs at least one atom")]
    EmptyMeasure,
    #[error("measure atoms do not balance: |Σ wⱼuⱼ| = {0:.3e}")]
    UnbalancedMeasure(f64),
    #[error("measure atom weights must be positive and finite")]
    BadWeight,
    #[error("operation requires dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("unknown valuation spec '{0}'")]
    UnknownSpec(String),
    #[error("cannot load measure polygon: {0}")]
    MeasureFile(String),
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

/// A valuation: an evaluation rule plus its declared structure.
///
/// `eval_opt(None)` is the empty body and always evaluates to zero.
#[derive(Clone)]
pub struct Valuation {
    label: String,
    eval_fn: Arc<dyn Fn(&Body) -> f64 + Send + Sync>,
    homogeneity: Option<usize>,
    monotone_strict_k: Option<usize>,
}

impl std::fmt::Debug for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Valuation")
            .field("label", &self.label)
            .field("homogeneity", &self.homogeneity)
            .field("monotone_strict_k", &self.monotone_strict_k)
            .finish()
    }
}

impl Valuation {
    pub fn new(
        label: impl Into<String>,
        eval_fn: impl Fn(&Body) -> f64 + Send + Sync + 'static,
        homogeneity: Option<usize>,
        monotone_strict_k: Option<usize>,
    ) -> Self {
        Valuation {
            label: label.into(),
            eval_fn: Arc::new(eval_fn),
            homogeneity,
            monotone_strict_k,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Declared homogeneity degree: `φ(tK) = tⁱ φ(K)`.
    pub fn homogeneity(&self) -> Option<usize> {
        self.homogeneity
    }

    /// Declared degree of strict monotonicity.
    pub fn monotone_strict_k(&self) -> Option<usize> {
        self.monotone_strict_k
    }

    pub fn eval(&self, k: &Body) -> f64 {
        (self.eval_fn)(k)
    }

    /// Evaluation extended to the empty body (`None`), which maps to zero.
    pub fn eval_opt(&self, k: Option<&Body>) -> f64 {
        k.map_or(0.0, |b| self.eval(b))
    }

    /// Lebesgue measure of the ambient dimension (`n`-homogeneous,
    /// `n`-strictly monotone; zero on lower-dimensional bodies).
    pub fn volume(dim: usize) -> Valuation {
        Valuation::new("vol", volume, Some(dim), Some(dim))
    }

    /// The `i`-th intrinsic volume (`i`-homogeneous, `i`-strictly
    /// monotone).
    pub fn intrinsic(dim: usize, i: usize) -> Result<Valuation, ValuationError> {
        if i > dim {
            return Err(ValuationError::IndexOutOfRange { i, n: dim });
        }
        Ok(Valuation::new(
            format!("v{i}"),
            move |k: &Body| {
                intrinsic_volume(k, i).expect("index checked at construction")
            },
            Some(i),
            Some(i),
        ))
    }

    /// Mean width (1-homogeneous, 1-strictly monotone).
    pub fn mean_width_valuation(dim: usize) -> Valuation {
        let _ = dim;
        Valuation::new(
            "meanwidth",
            |k: &Body| mean_width(k).expect("mean width of a valid body"),
            Some(1),
            Some(1),
        )
    }

    /// Pointwise sum. The homogeneity degree survives only when both
    /// summands agree; the strict-monotonicity degree is the weaker
    /// (larger-class, i.e. smaller) of the two when both are declared.
    pub fn sum(a: &Valuation, b: &Valuation) -> Valuation {
        let label = format!("{}+{}", a.label, b.label);
        let homogeneity = match (a.homogeneity, b.homogeneity) {
            (Some(x), Some(y)) if x == y => Some(x),
            _ => None,
        };
        let strict = match (a.monotone_strict_k, b.monotone_strict_k) {
            (Some(x), Some(y)) => Some(x.min(y)),
            _ => None,
        };
        let fa = a.eval_fn.clone();
        let fb = b.eval_fn.clone();
        Valuation::new(label, move |k: &Body| fa(k) + fb(k), homogeneity, strict)
    }
}

/// Parses a valuation spec string for ambient dimension `dim`:
/// `"vol" | "v1" | "v2" | "meanwidth" | "firey:<polygon-file>" |
/// "sum:<spec>+<spec>"`. The Firey polygon file holds a JSON body
/// (`{"dim": 2, "vertices": [...]}`) whose boundary length measure
/// generates the valuation.
pub fn parse_phi_spec(spec: &str, dim: usize) -> Result<Valuation, ValuationError> {
    match spec {
        "vol" => Ok(Valuation::volume(dim)),
        "v1" => Valuation::intrinsic(dim, 1),
        "v2" => Valuation::intrinsic(dim, 2),
        "meanwidth" => Ok(Valuation::mean_width_valuation(dim)),
        s if s.starts_with("firey:") => {
            if dim != 2 {
                return Err(ValuationError::WrongDimension { expected: 2, got: dim });
            }
            let path = &s["firey:".len()..];
            let txt = std::fs::read_to_string(path)
                .map_err(|e| ValuationError::MeasureFile(format!("{path}: {e}")))?;
            let poly: Body = serde_json::from_str(&txt)
                .map_err(|e| ValuationError::MeasureFile(format!("{path}: {e}")))?;
            let measure = MixedAreaMeasure2D::from_polygon(&poly)?;
            Ok(firey_valuation(measure))
        }
        s if s.starts_with("sum:") => {
            let body = &s["sum:".len()..];
            let parts: Vec<&str> = body.split('+').collect();
            if parts.len() < 2 || parts.iter().any(|p| p.is_empty()) {
                return Err(ValuationError::UnknownSpec(spec.to_string()));
            }
            let mut acc = parse_phi_spec(parts[0], dim)?;
            for p in &parts[1..] {
                acc = Valuation::sum(&acc, &parse_phi_spec(p, dim)?);
            }
            Ok(acc)
        }
        other => Err(ValuationError::UnknownSpec(other.to_string())),
    }
}
