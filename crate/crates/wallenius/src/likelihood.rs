//! Joint log-likelihood of a dataset under shared weights.

use crate::dataset::Dataset;
use crate::error::Result;
use crate::pmf::log_mass_unchecked;
use crate::urn::{LogDensity, WeightVector};

/// Sum of per-table log masses. Any table with zero mass under `w` yields
/// the `-inf` sentinel with the underflow flag set.
pub fn log_likelihood(dataset: &Dataset, w: &WeightVector) -> Result<LogDensity> {
    dataset.require_shared_binding()?;
    if w.len() != dataset.k() {
        return Err(crate::error::Error::DimensionMismatch(format!(
            "{} weights for {} categories",
            w.len(),
            dataset.k()
        )));
    }
    Ok(log_likelihood_raw(dataset, w.components()))
}

/// Hot path used by optimizers and samplers: weights as a raw normalized
/// slice, no binding or dimension checks. Repeated tables are evaluated
/// once via the dataset's distinct-table groups.
pub(crate) fn log_likelihood_raw(dataset: &Dataset, w: &[f64]) -> LogDensity {
    let mut value = 0.0;
    let mut underflow = false;
    for g in dataset.groups() {
        let ld = log_mass_unchecked(&g.counts, w, &g.x);
        underflow |= ld.underflow;
        value += g.multiplicity * ld.value;
    }
    if value == f64::NEG_INFINITY {
        LogDensity { value, underflow: true }
    } else {
        LogDensity { value, underflow }
    }
}
