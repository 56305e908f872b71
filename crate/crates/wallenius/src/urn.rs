//! Core domain types: urn compositions, selection weights and observed draws.
//!
//! An [`UrnSpec`] describes the stock of an urn as per-category ball counts.
//! A [`WeightVector`] holds the selection bias of each category; weights are
//! identifiable only up to a positive scale factor, so they are stored
//! normalized onto the probability simplex. A [`DrawOutcome`] records how many
//! balls of each category were removed in one round of sampling without
//! replacement.

use serde::Serialize;

use crate::error::{Error, Result};

/// Smallest admissible normalized weight component. Rejecting smaller values
/// keeps the exponents `w_i / D` of the mass integrand finite; callers that
/// walk towards the boundary must clamp at this floor.
pub const WEIGHT_FLOOR: f64 = 1e-9;

/// Interior margin used when placing grid points or boundary-clamped
/// estimates strictly inside the simplex.
pub const SIMPLEX_FLOOR: f64 = 1e-6;

/// Per-category ball counts of an urn, with category labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UrnSpec {
    counts: Vec<u64>,
    labels: Vec<String>,
}

impl UrnSpec {
    /// Builds an urn from category counts and labels.
    ///
    /// Requires at least one category, at least one ball overall, matching
    /// lengths, and pairwise distinct labels.
    pub fn new(counts: Vec<u64>, labels: Vec<String>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidUrn("need at least one category".into()));
        }
        if counts.len() != labels.len() {
            return Err(Error::InvalidUrn(format!(
                "{} counts but {} labels",
                counts.len(),
                labels.len()
            )));
        }
        if counts.iter().sum::<u64>() == 0 {
            return Err(Error::InvalidUrn("urn is empty".into()));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(Error::InvalidUrn(format!("duplicate label {a:?}")));
            }
        }
        Ok(Self { counts, labels })
    }

    /// Builds an urn with generated labels `c1..cK`.
    pub fn with_default_labels(counts: Vec<u64>) -> Result<Self> {
        let labels = (1..=counts.len()).map(|i| format!("c{i}")).collect();
        Self::new(counts, labels)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Number of categories.
    pub fn k(&self) -> usize {
        self.counts.len()
    }

    /// Total number of balls.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Checks that `x` could have been drawn from this urn.
    pub fn validate_outcome(&self, x: &DrawOutcome) -> Result<()> {
        if x.counts().len() != self.k() {
            return Err(Error::DimensionMismatch(format!(
                "outcome has {} categories, urn has {}",
                x.counts().len(),
                self.k()
            )));
        }
        for (i, (&xi, &mi)) in x.counts().iter().zip(&self.counts).enumerate() {
            if xi > mi {
                return Err(Error::InfeasibleOutcome(format!(
                    "category {:?}: drew {xi} of {mi} available",
                    self.labels[i]
                )));
            }
        }
        Ok(())
    }
}

/// Positive selection weights, stored normalized so that they sum to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct WeightVector {
    w: Vec<f64>,
}

impl WeightVector {
    /// Normalizes `raw` onto the simplex. All components must be strictly
    /// positive and finite, and no normalized component may fall below
    /// [`WEIGHT_FLOOR`].
    pub fn new(raw: Vec<f64>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::InvalidWeights("empty weight vector".into()));
        }
        if raw.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(Error::InvalidWeights(
                "weights must be strictly positive and finite".into(),
            ));
        }
        let sum: f64 = raw.iter().sum();
        if !sum.is_finite() {
            return Err(Error::InvalidWeights("weight sum overflows".into()));
        }
        let w: Vec<f64> = raw.iter().map(|v| v / sum).collect();
        if w.iter().any(|v| *v < WEIGHT_FLOOR) {
            return Err(Error::InvalidWeights(format!(
                "normalized component below floor {WEIGHT_FLOOR:e}"
            )));
        }
        Ok(Self { w })
    }

    /// Uniform weights `1/K`.
    pub fn uniform(k: usize) -> Result<Self> {
        Self::new(vec![1.0; k.max(1)])
    }

    pub fn components(&self) -> &[f64] {
        &self.w
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }
}

/// Observed per-category draw counts for one table; `n` is the draw total.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DrawOutcome {
    x: Vec<u64>,
    n: u64,
}

impl DrawOutcome {
    pub fn new(x: Vec<u64>) -> Self {
        let n = x.iter().sum();
        Self { x, n }
    }

    pub fn counts(&self) -> &[u64] {
        &self.x
    }

    pub fn n(&self) -> u64 {
        self.n
    }
}

/// A natural-log probability together with an underflow marker.
///
/// `underflow` is set when the quadrature total fell below the representable
/// floor, in which case `value` is the `-inf` sentinel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogDensity {
    pub value: f64,
    pub underflow: bool,
}

impl LogDensity {
    pub fn finite(value: f64) -> Self {
        Self { value, underflow: false }
    }

    pub fn underflowed() -> Self {
        Self { value: f64::NEG_INFINITY, underflow: true }
    }
}
