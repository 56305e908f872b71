//! Forward simulation of biased draws without replacement.

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::rng::rng_from_seed;
use crate::urn::{DrawOutcome, UrnSpec, WeightVector};

/// Draws `n` balls sequentially, each category picked with probability
/// proportional to `weight * remaining stock`. Deterministic for a fixed
/// seed.
pub fn simulate_draw(urn: &UrnSpec, w: &WeightVector, n: u64, seed: u64) -> Result<DrawOutcome> {
    if w.len() != urn.k() {
        return Err(Error::DimensionMismatch(format!(
            "{} weights for {} categories",
            w.len(),
            urn.k()
        )));
    }
    if n > urn.total() {
        return Err(Error::Domain(format!(
            "cannot draw {n} from an urn of {}",
            urn.total()
        )));
    }

    let mut rng = rng_from_seed(seed);
    let weights = w.components();
    let mut remaining: Vec<u64> = urn.counts().to_vec();
    let mut x = vec![0u64; urn.k()];
    for _ in 0..n {
        let total: f64 = remaining
            .iter()
            .zip(weights)
            .map(|(&r, &wi)| wi * r as f64)
            .sum();
        let mut u = rng.random::<f64>() * total;
        let mut pick = urn.k() - 1;
        for (i, (&r, &wi)) in remaining.iter().zip(weights).enumerate() {
            u -= wi * r as f64;
            if u < 0.0 && r > 0 {
                pick = i;
                break;
            }
        }
        // rounding can leave u barely nonnegative after the last category;
        // fall back to the last stocked one
        while remaining[pick] == 0 {
            pick -= 1;
        }
        remaining[pick] -= 1;
        x[pick] += 1;
    }
    Ok(DrawOutcome::new(x))
}
