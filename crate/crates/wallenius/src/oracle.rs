//! Exact reference evaluation of biased sampling without replacement.
//!
//! The mass of an outcome is computed by dynamic programming over
//! remaining-stock states, one draw at a time: a ball of category `i` is
//! taken with probability `w_i * r_i / sum_j w_j * r_j` where `r` is the
//! vector of remaining counts. Summing over all draw orders this way is
//! exact up to floating rounding, which makes it the ground truth that the
//! quadrature-based mass function is checked against.
//!
//! The state space has `prod_i (m_i + 1)` cells, so this route is only
//! viable for small urns; [`DEFAULT_STATE_CAP`] bounds it.

use crate::error::{Error, Result};
use crate::urn::{DrawOutcome, UrnSpec, WeightVector};

/// Largest allowed `prod_i (m_i + 1)` for the DP table.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// Exact distribution of the drawn counts after `n` biased draws.
#[derive(Debug, Clone)]
pub struct OutcomeDistribution {
    counts: Vec<u64>,
    n: u64,
    strides: Vec<usize>,
    probs: Vec<f64>,
}

impl OutcomeDistribution {
    /// Runs the DP with the default state cap.
    pub fn compute(urn: &UrnSpec, w: &WeightVector, n: u64) -> Result<Self> {
        Self::compute_capped(urn, w, n, DEFAULT_STATE_CAP)
    }

    pub fn compute_capped(
        urn: &UrnSpec,
        w: &WeightVector,
        n: u64,
        state_cap: usize,
    ) -> Result<Self> {
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

        let m = urn.counts();
        let k = m.len();
        let mut strides = vec![0usize; k];
        let mut size = 1usize;
        for i in 0..k {
            strides[i] = size;
            size = size
                .checked_mul(m[i] as usize + 1)
                .filter(|s| *s <= state_cap)
                .ok_or_else(|| {
                    Error::Capacity(format!("DP state space exceeds cap {state_cap}"))
                })?;
        }

        let weights = w.components();
        let mut probs = vec![0.0f64; size];
        probs[0] = 1.0;
        // frontier of states with t drawn balls
        let mut frontier: Vec<usize> = vec![0];
        let mut x = vec![0u64; k];
        for _ in 0..n {
            let mut next = Vec::with_capacity(frontier.len() * k);
            for &idx in &frontier {
                let p = probs[idx];
                probs[idx] = 0.0;
                if p == 0.0 {
                    continue;
                }
                decode(idx, &strides, m, &mut x);
                let total: f64 = (0..k).map(|i| weights[i] * (m[i] - x[i]) as f64).sum();
                for i in 0..k {
                    if x[i] < m[i] {
                        let step = weights[i] * (m[i] - x[i]) as f64 / total;
                        let to = idx + strides[i];
                        if probs[to] == 0.0 {
                            next.push(to);
                        }
                        probs[to] += p * step;
                    }
                }
            }
            frontier = next;
        }

        Ok(Self { counts: m.to_vec(), n, strides, probs })
    }

    /// Mass of one outcome; exactly zero off the support.
    pub fn prob(&self, x: &DrawOutcome) -> f64 {
        if x.counts().len() != self.counts.len() || x.n() != self.n {
            return 0.0;
        }
        if x.counts().iter().zip(&self.counts).any(|(xi, mi)| xi > mi) {
            return 0.0;
        }
        let idx: usize = x
            .counts()
            .iter()
            .zip(&self.strides)
            .map(|(&xi, &s)| xi as usize * s)
            .sum();
        self.probs[idx]
    }

    /// All feasible outcomes with their masses, in lexicographic order.
    pub fn support(&self) -> Vec<(DrawOutcome, f64)> {
        enumerate_support(&self.counts, self.n)
            .into_iter()
            .map(|x| {
                let p = self.prob(&x);
                (x, p)
            })
            .collect()
    }
}

fn decode(idx: usize, strides: &[usize], m: &[u64], out: &mut [u64]) {
    let mut rest = idx;
    for i in (0..strides.len()).rev() {
        out[i] = (rest / strides[i]) as u64;
        rest %= strides[i];
        debug_assert!(out[i] <= m[i]);
    }
}

/// Counts of feasible outcomes: all `x` with `0 <= x_i <= m_i`, `sum x = n`,
/// in lexicographic order.
pub fn enumerate_support(counts: &[u64], n: u64) -> Vec<DrawOutcome> {
    let mut out = Vec::new();
    let mut x = vec![0u64; counts.len()];
    fill(counts, n, 0, &mut x, &mut out);
    out
}

fn fill(counts: &[u64], left: u64, i: usize, x: &mut Vec<u64>, out: &mut Vec<DrawOutcome>) {
    if i == counts.len() {
        if left == 0 {
            out.push(DrawOutcome::new(x.clone()));
        }
        return;
    }
    let tail: u64 = counts[i + 1..].iter().sum();
    let lo = left.saturating_sub(tail);
    let hi = left.min(counts[i]);
    for v in lo..=hi {
        x[i] = v;
        fill(counts, left - v, i + 1, x, out);
    }
    x[i] = 0;
}

/// Exact mass of `x` by dynamic programming.
///
/// Errors on dimension mismatch, infeasible `x`, or a state space larger
/// than [`DEFAULT_STATE_CAP`].
pub fn pmf_oracle(urn: &UrnSpec, w: &WeightVector, x: &DrawOutcome) -> Result<f64> {
    urn.validate_outcome(x)?;
    let dist = OutcomeDistribution::compute(urn, w, x.n())?;
    Ok(dist.prob(x))
}
