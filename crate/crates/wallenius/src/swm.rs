//! SWM: the simplex-walk Metropolis posterior sampler for the weights.
//!
//! The target is `likelihood(dataset | w)` times a symmetric Dirichlet
//! prior. The walk lives in the K-1 log-ratio coordinates, where proposals
//! are additive Gaussian steps of spread `step_scale`; the acceptance ratio
//! includes the log-ratio-transform Jacobian (`prod_i w_i`), so with
//! concentration `a` the log target in walk coordinates is
//! `loglik(w) + a * sum_i ln w_i` up to a constant. Proposals that would
//! push any component below the weight floor are rejected outright, which
//! truncates a region of negligible prior mass and keeps every stored
//! sample strictly inside the simplex.

use rand::Rng as _;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::coords::{from_simplex, to_simplex};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::likelihood::log_likelihood_raw;
use crate::rng::rng_from_seed;
use crate::urn::{WeightVector, WEIGHT_FLOOR};

/// Acceptance rate targeted by the optional burn-in step-scale tuner.
pub const ADAPT_TARGET_ACCEPT: f64 = 0.3;

#[derive(Debug, Clone, Serialize)]
pub struct SwmConfig {
    /// Retained post-burn-in iterations.
    pub iterations: usize,
    /// Iterations discarded before retention starts.
    pub burn_in: usize,
    /// Proposal spread in the log-ratio coordinates.
    pub step_scale: f64,
    pub seed: u64,
    pub w0: WeightVector,
    /// Symmetric Dirichlet prior parameter.
    pub prior_concentration: f64,
    /// Tune `step_scale` towards [`ADAPT_TARGET_ACCEPT`] during burn-in
    /// only; the kernel is frozen afterwards.
    pub adapt_step: bool,
}

impl SwmConfig {
    /// Defaults per the documented design: 10% burn-in, step 0.15,
    /// Dirichlet(1) prior, no adaptation.
    pub fn new(iterations: usize, w0: WeightVector, seed: u64) -> Self {
        Self {
            iterations,
            burn_in: iterations / 10,
            step_scale: 0.15,
            seed,
            w0,
            prior_concentration: 1.0,
            adapt_step: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 || self.iterations <= self.burn_in {
            return Err(Error::Domain(format!(
                "iterations ({}) must exceed burn-in ({})",
                self.iterations, self.burn_in
            )));
        }
        if !(self.step_scale > 0.0) {
            return Err(Error::Domain("step_scale must be positive".into()));
        }
        if !(self.prior_concentration > 0.0) {
            return Err(Error::Domain("prior concentration must be positive".into()));
        }
        Ok(())
    }
}

/// A finished chain: retained samples with their log posterior values and
/// acceptance bookkeeping.
#[derive(Debug, Clone)]
pub struct Chain {
    pub samples: Vec<WeightVector>,
    pub log_posterior: Vec<f64>,
    /// Accepted / proposed over the retained phase.
    pub accept_rate: f64,
    pub accepted: u64,
    pub config: SwmConfig,
    pub warnings: Vec<String>,
}

impl Chain {
    /// Series of one weight component across the retained samples.
    pub fn component(&self, idx: usize) -> Vec<f64> {
        self.samples.iter().map(|w| w.components()[idx]).collect()
    }

    pub fn k(&self) -> usize {
        self.config.w0.len()
    }
}

/// Runs the sampler. Deterministic for a fixed config.
pub fn run_swm(dataset: &Dataset, config: &SwmConfig) -> Result<Chain> {
    dataset.require_shared_binding()?;
    config.validate()?;
    if config.w0.len() != dataset.k() {
        return Err(Error::DimensionMismatch(format!(
            "start has {} components, dataset has {} categories",
            config.w0.len(),
            dataset.k()
        )));
    }

    let alpha = config.prior_concentration;
    let eval = |z: &[f64]| -> Option<(Vec<f64>, f64)> {
        let w = to_simplex(z);
        if w.iter().any(|&v| v < WEIGHT_FLOOR) {
            return None;
        }
        let ll = log_likelihood_raw(dataset, &w).value;
        if !ll.is_finite() {
            return None;
        }
        let log_post = ll + alpha * w.iter().map(|&v| v.ln()).sum::<f64>();
        Some((w, log_post))
    };

    let mut z = from_simplex(config.w0.components());
    let Some((_, mut log_post)) = eval(&z) else {
        return Err(Error::InvalidStart(
            "log-likelihood is -inf at the starting point".into(),
        ));
    };

    let d = z.len();
    let mut rng = rng_from_seed(config.seed);
    let mut scale = config.step_scale;
    let mut samples = Vec::with_capacity(config.iterations);
    let mut log_posts = Vec::with_capacity(config.iterations);
    let mut warnings = Vec::new();
    let mut accepted = 0u64;
    let mut window_accepts = 0u32;
    let total = config.burn_in + config.iterations;

    let mut proposal = vec![0.0; d];
    for iter in 0..total {
        let burning = iter < config.burn_in;
        for (p, zi) in proposal.iter_mut().zip(&z) {
            let step: f64 = rng.sample(StandardNormal);
            *p = zi + scale * step;
        }
        let candidate = eval(&proposal);
        let u: f64 = rng.random();
        if let Some((w, lp)) = candidate {
            if lp - log_post > u.ln() {
                z.copy_from_slice(&proposal);
                log_post = lp;
                if !burning {
                    accepted += 1;
                } else {
                    window_accepts += 1;
                }
                if !burning {
                    samples.push(WeightVector::new(w)?);
                    log_posts.push(lp);
                    continue;
                }
            }
        }
        if !burning {
            // repeat the current state
            samples.push(WeightVector::new(to_simplex(&z))?);
            log_posts.push(log_post);
        } else if config.adapt_step && (iter + 1) % 50 == 0 {
            let rate = window_accepts as f64 / 50.0;
            scale = (scale * (0.5 * (rate - ADAPT_TARGET_ACCEPT)).exp()).clamp(1e-3, 10.0);
            window_accepts = 0;
        }

        if !burning && samples.len() == 1000 && accepted == 0 {
            warnings.push(
                "no proposal accepted in the first 1000 post-burn-in iterations; \
                 consider a smaller step_scale"
                    .into(),
            );
        }
    }

    Ok(Chain {
        samples,
        log_posterior: log_posts,
        accept_rate: accepted as f64 / config.iterations as f64,
        accepted,
        config: config.clone(),
        warnings,
    })
}

/// Per-component equal-tailed posterior quantile intervals.
#[derive(Debug, Clone, Serialize)]
pub struct CredibleInterval {
    pub level: f64,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub posterior_mean: WeightVector,
}

pub fn credible_intervals(chain: &Chain, level: f64) -> Result<CredibleInterval> {
    if chain.samples.len() < 100 {
        return Err(Error::SampleSize(format!(
            "need at least 100 samples, chain has {}",
            chain.samples.len()
        )));
    }
    if !(0.0 < level && level < 1.0) {
        return Err(Error::Domain(format!("level {level} outside (0,1)")));
    }

    let k = chain.k();
    let tail = 0.5 * (1.0 - level);
    let mut lower = Vec::with_capacity(k);
    let mut upper = Vec::with_capacity(k);
    let mut mean = Vec::with_capacity(k);
    for c in 0..k {
        let mut series = chain.component(c);
        series.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        lower.push(quantile_sorted(&series, tail));
        upper.push(quantile_sorted(&series, 1.0 - tail));
        mean.push(series.iter().sum::<f64>() / series.len() as f64);
    }
    Ok(CredibleInterval {
        level,
        lower,
        upper,
        posterior_mean: WeightVector::new(mean)?,
    })
}

/// Linear-interpolation quantile of an ascending slice.
pub(crate) fn quantile_sorted(sorted: &[f64], tau: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let pos = tau * (n - 1) as f64;
    let lo = pos.floor() as usize;
    let frac = pos - lo as f64;
    if lo + 1 >= n {
        sorted[n - 1]
    } else {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    }
}
