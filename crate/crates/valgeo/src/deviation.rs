//! Meet and join deviations of a valuation, and their semimetric
//! diagnostics.
//!
//! For a valuation `φ` and convex bodies `K, L` of the same dimension:
//!
//! * the *meet deviation* is `Δ_φ(K, L) = φ(K) + φ(L) − 2 φ(K ∩ L)`, and
//! * the *join deviation* is `ρ_φ(K, L) = 2 φ(K ∪̃ L) − φ(K) − φ(L)`,
//!
//! where `K ∪̃ L` is the convex hull of the union and `φ(∅) = 0`. Both are
//! symmetric, vanish at `K = L`, and are nonnegative for monotone `φ`, but
//! the triangle inequality can genuinely fail (see
//! [`triangle_violation`]); they are semimetrics, not metrics, in general.
//!
//! For monotone `φ` the deviations dominate valuation gaps:
//! `|φ(K) − φ(L)| ≤ Δ_φ(K, L)`. Only this non-strict form is asserted —
//! equality is attained already by nested pairs, where
//! `Δ_φ(K, L) = φ(L) − φ(K)` exactly.

use crate::geom::{convex_hull, hausdorff_distance, intersect, Body, GeomError};
use crate::valuation::Valuation;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeviationKind {
    Meet,
    Join,
}

impl std::fmt::Display for DeviationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DeviationKind::Meet => write!(f, "meet"),
            DeviationKind::Join => write!(f, "join"),
        }
    }
}

/// A deviation: a kind (meet or join) bound to a valuation.
#[derive(Clone, Debug)]
pub struct Deviation {
    kind: DeviationKind,
    phi: Valuation,
}

impl Deviation {
    pub fn meet(phi: Valuation) -> Self {
        Deviation { kind: DeviationKind::Meet, phi }
    }

    pub fn join(phi: Valuation) -> Self {
        Deviation { kind: DeviationKind::Join, phi }
    }

    pub fn kind(&self) -> DeviationKind {
        self.kind
    }

    pub fn phi(&self) -> &Valuation {
        &self.phi
    }

    pub fn eval(&self, k: &Body, l: &Body) -> Result<f64, GeomError> {
        match self.kind {
            DeviationKind::Meet => meet_deviation(&self.phi, k, l),
            DeviationKind::Join => join_deviation(&self.phi, k, l),
        }
    }
}

/// Orders a pair of bodies by their vertex lists so that deviations are
/// *exactly* symmetric: intersection points and hull sweeps pick up
/// last-ulp differences when the argument roles swap, so both deviations
/// normalize the roles first.
fn canonical_pair<'a>(k: &'a Body, l: &'a Body) -> (&'a Body, &'a Body) {
    let order = k
        .vertices()
        .iter()
        .zip(l.vertices())
        .map(|(p, q)| p.lex_cmp(q))
        .find(|o| *o != std::cmp::Ordering::Equal)
        .unwrap_or_else(|| k.vertices().len().cmp(&l.vertices().len()));
    if order == std::cmp::Ordering::Greater {
        (l, k)
    } else {
        (k, l)
    }
}

/// `Δ_φ(K, L) = φ(K) + φ(L) − 2 φ(K ∩ L)`, with `φ = 0` on an empty
/// intersection.
pub fn meet_deviation(phi: &Valuation, k: &Body, l: &Body) -> Result<f64, GeomError> {
    let (k, l) = canonical_pair(k, l);
    let meet = intersect(k, l)?;
    Ok(phi.eval(k) + phi.eval(l) - 2.0 * phi.eval_opt(meet.as_ref()))
}

/// `ρ_φ(K, L) = 2 φ(K ∪̃ L) − φ(K) − φ(L)` with `K ∪̃ L` the hull of the
/// vertex union.
pub fn join_deviation(phi: &Valuation, k: &Body, l: &Body) -> Result<f64, GeomError> {
    let (k, l) = canonical_pair(k, l);
    let join = hull_of_union(k, l)?;
    Ok(2.0 * phi.eval(&join) - phi.eval(k) - phi.eval(l))
}

/// Convex hull of `K ∪ L` (the join in the lattice of convex bodies).
pub fn hull_of_union(k: &Body, l: &Body) -> Result<Body, GeomError> {
    if k.dim() != l.dim() {
        return Err(GeomError::DimensionMismatch(k.dim(), l.dim()));
    }
    let mut pts = k.vertices().to_vec();
    pts.extend_from_slice(l.vertices());
    convex_hull(&pts)
}

/// `dev(K, L) − dev(K, M) − dev(M, L)`; a positive value witnesses a
/// failure of the triangle inequality through `M`.
pub fn triangle_violation(
    dev: &Deviation,
    k: &Body,
    m: &Body,
    l: &Body,
) -> Result<f64, GeomError> {
    Ok(dev.eval(k, l)? - dev.eval(k, m)? - dev.eval(m, l)?)
}

/// Outcome of [`semimetric_check`].
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SemimetricReport {
    pub trials: usize,
    /// Pairs whose two evaluation orders disagreed (must be 0).
    pub symmetry_failures: usize,
    /// Smallest deviation value seen (must be ≥ −1e−9).
    pub min_value: f64,
    /// Pairs that were genuinely distinct (Hausdorff distance > 1e−3).
    pub distinct_pairs: usize,
    /// Distinct pairs with non-positive deviation (must be 0).
    pub indistinct_failures: usize,
    pub pass: bool,
}

/// Samples `trials` pairs from `sampler` and asserts the semimetric axioms
/// that hold for any monotone valuation: exact symmetry, nonnegativity
/// within 1e−9, and positivity on pairs that are distinct beyond the
/// sampling floor `d_H > 1e−3`.
pub fn semimetric_check(
    dev: &Deviation,
    sampler: &mut dyn FnMut(&mut ChaCha8Rng) -> (Body, Body),
    trials: usize,
    seed: u64,
) -> Result<SemimetricReport, GeomError> {
    let mut rng = crate::sample::rng(seed);
    let mut symmetry_failures = 0;
    let mut min_value = f64::INFINITY;
    let mut distinct_pairs = 0;
    let mut indistinct_failures = 0;
    for _ in 0..trials {
        let (k, l) = sampler(&mut rng);
        let forward = dev.eval(&k, &l)?;
        let backward = dev.eval(&l, &k)?;
        if forward != backward {
            symmetry_failures += 1;
        }
        min_value = min_value.min(forward);
        if hausdorff_distance(&k, &l)? > 1e-3 {
            distinct_pairs += 1;
            if forward <= 0.0 {
                indistinct_failures += 1;
            }
        }
    }
    let pass = symmetry_failures == 0 && min_value >= -1e-9 && indistinct_failures == 0;
    Ok(SemimetricReport {
        trials,
        symmetry_failures,
        min_value,
        distinct_pairs,
        indistinct_failures,
        pass,
    })
}
