//! Ideal (exhaustive) and parametric (Monte Carlo) bootstrap distributions
//! of the weight MLE.
//!
//! The ideal bootstrap enumerates every outcome an urn design can produce,
//! refits the estimator on each, and carries the model probability of the
//! outcome as its mass: the exact sampling distribution of the estimator
//! under the fitted model. The parametric bootstrap replaces enumeration
//! with simulation and is the fallback when the support is too large.

use serde::Serialize;

use crate::dataset::{Binding, Dataset, Table};
use crate::error::{Error, Result};
use crate::mle::fit_mle_warm;
use crate::oracle::enumerate_support;
use crate::pmf::pmf;
use crate::rng::mix64;
use crate::simulate::simulate_draw;
use crate::urn::{UrnSpec, WeightVector};

/// Largest enumerable support for the ideal bootstrap.
pub const SUPPORT_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BootstrapKind {
    Ideal,
    Parametric,
}

#[derive(Debug, Clone, Serialize)]
pub struct Replicate {
    pub w_star: WeightVector,
    /// Model probability of the generating outcome (ideal) or `1/B`
    /// (parametric).
    pub mass: f64,
    pub converged: bool,
    /// Boundary refits are retained: dropping them would bias the
    /// distribution.
    pub at_boundary: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BootstrapDistribution {
    pub kind: BootstrapKind,
    pub replicates: Vec<Replicate>,
    /// Component-wise standard error of the estimator.
    pub se: Vec<f64>,
    /// Monte Carlo replication count (parametric only).
    pub b: Option<usize>,
    /// Replicates excluded from `se` because their refit did not converge.
    pub n_nonconverged: usize,
}

impl BootstrapDistribution {
    /// Mass-weighted mean of the replicated estimates.
    pub fn mean(&self) -> Vec<f64> {
        let k = self.replicates.first().map_or(0, |r| r.w_star.len());
        let mut mean = vec![0.0; k];
        let mut total = 0.0;
        for r in self.replicates.iter().filter(|r| r.converged) {
            total += r.mass;
            for (m, &w) in mean.iter_mut().zip(r.w_star.components()) {
                *m += r.mass * w;
            }
        }
        for m in &mut mean {
            *m /= total;
        }
        mean
    }
}

/// Exact sampling distribution of the MLE for a single-table design of `n`
/// draws from `urn`, under fitted weights `w_hat`.
pub fn ideal_bootstrap(
    urn: &UrnSpec,
    w_hat: &WeightVector,
    n: u64,
) -> Result<BootstrapDistribution> {
    if w_hat.len() != urn.k() {
        return Err(Error::DimensionMismatch(format!(
            "{} weights for {} categories",
            w_hat.len(),
            urn.k()
        )));
    }
    if urn.k() < 2 || n == 0 || n >= urn.total() {
        return Err(Error::Domain(
            "design is degenerate: every outcome has a flat likelihood".into(),
        ));
    }
    let count = support_size(urn.counts(), n);
    if count > SUPPORT_CAP {
        return Err(Error::Capacity(format!(
            "support has {count} outcomes (cap {SUPPORT_CAP}); use the parametric bootstrap"
        )));
    }

    let mut replicates = Vec::with_capacity(count);
    for x in enumerate_support(urn.counts(), n) {
        let mass = pmf(urn, w_hat, &x)?;
        let d = Dataset::new(
            vec![Table::new("boot", urn.clone(), x)?],
            Binding::SharedWeights,
        )?;
        let fit = fit_mle_warm(&d, w_hat)?;
        replicates.push(Replicate {
            w_star: fit.w_hat,
            mass,
            converged: fit.converged,
            at_boundary: fit.boundary_flag,
        });
    }
    let n_nonconverged = replicates.iter().filter(|r| !r.converged).count();
    let se = weighted_se(&replicates);
    Ok(BootstrapDistribution {
        kind: BootstrapKind::Ideal,
        replicates,
        se,
        b: None,
        n_nonconverged,
    })
}

/// Simulates `b` datasets from the fitted model (same design as `dataset`),
/// refits each, and reports the component-wise standard deviation of the
/// replicated estimates. Replicate `i` uses the derived seed
/// `mix64(seed, i)`, so runs are reproducible and extending `b` reuses the
/// earlier replicates exactly.
pub fn parametric_bootstrap(
    dataset: &Dataset,
    w_hat: &WeightVector,
    b: usize,
    seed: u64,
) -> Result<BootstrapDistribution> {
    dataset.require_shared_binding()?;
    if b < 2 {
        return Err(Error::Domain(format!("need B >= 2 replicates, got {b}")));
    }
    if w_hat.len() != dataset.k() {
        return Err(Error::DimensionMismatch(format!(
            "{} weights for {} categories",
            w_hat.len(),
            dataset.k()
        )));
    }

    let mass = 1.0 / b as f64;
    let mut replicates = Vec::with_capacity(b);
    for rep in 0..b {
        let rep_seed = mix64(seed, rep as u64);
        let mut tables = Vec::with_capacity(dataset.len());
        for (t_idx, t) in dataset.tables().iter().enumerate() {
            let x = simulate_draw(&t.urn, w_hat, t.outcome.n(), mix64(rep_seed, t_idx as u64))?;
            tables.push(Table::new(t.id.clone(), t.urn.clone(), x)?);
        }
        let sim = Dataset::new(tables, Binding::SharedWeights)?;
        match fit_mle_warm(&sim, w_hat) {
            Ok(fit) => replicates.push(Replicate {
                w_star: fit.w_hat,
                mass,
                converged: fit.converged,
                at_boundary: fit.boundary_flag,
            }),
            Err(Error::FlatLikelihood(_)) => replicates.push(Replicate {
                w_star: w_hat.clone(),
                mass,
                converged: false,
                at_boundary: false,
            }),
            Err(e) => return Err(e),
        }
    }

    let n_nonconverged = replicates.iter().filter(|r| !r.converged).count();
    if b - n_nonconverged < 2 {
        return Err(Error::NonConvergence(
            "fewer than two replicate fits converged".into(),
        ));
    }
    let se = sample_se(&replicates);
    Ok(BootstrapDistribution {
        kind: BootstrapKind::Parametric,
        replicates,
        se,
        b: Some(b),
        n_nonconverged,
    })
}

/// Number of outcomes `x` with `0 <= x_i <= m_i` and `sum x = n`, without
/// enumerating them.
fn support_size(counts: &[u64], n: u64) -> usize {
    // DP over categories on the draw total
    let n = n as usize;
    let mut ways = vec![0usize; n + 1];
    ways[0] = 1;
    for &m in counts {
        let m = m as usize;
        let mut next = vec![0usize; n + 1];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for take in 0..=m.min(n - s) {
                next[s + take] = next[s + take].saturating_add(w);
            }
        }
        ways = next;
    }
    ways[n]
}

/// Mass-weighted standard deviation around the mass-weighted mean
/// (all replicates; ideal masses form a probability distribution).
fn weighted_se(replicates: &[Replicate]) -> Vec<f64> {
    let k = replicates.first().map_or(0, |r| r.w_star.len());
    let total: f64 = replicates.iter().map(|r| r.mass).sum();
    let mut mean = vec![0.0; k];
    for r in replicates {
        for (m, &w) in mean.iter_mut().zip(r.w_star.components()) {
            *m += r.mass * w / total;
        }
    }
    let mut var = vec![0.0; k];
    for r in replicates {
        for ((v, m), &w) in var.iter_mut().zip(&mean).zip(r.w_star.components()) {
            *v += r.mass * (w - m) * (w - m) / total;
        }
    }
    var.into_iter().map(f64::sqrt).collect()
}

/// Unweighted sample standard deviation over converged replicates.
fn sample_se(replicates: &[Replicate]) -> Vec<f64> {
    let used: Vec<&Replicate> = replicates.iter().filter(|r| r.converged).collect();
    let k = used.first().map_or(0, |r| r.w_star.len());
    let n = used.len() as f64;
    let mut mean = vec![0.0; k];
    for r in &used {
        for (m, &w) in mean.iter_mut().zip(r.w_star.components()) {
            *m += w / n;
        }
    }
    let mut var = vec![0.0; k];
    for r in &used {
        for ((v, m), &w) in var.iter_mut().zip(&mean).zip(r.w_star.components()) {
            *v += (w - m) * (w - m) / (n - 1.0);
        }
    }
    var.into_iter().map(f64::sqrt).collect()
}
