//! Maximum-likelihood estimation of the weight vector.
//!
//! The likelihood is maximized over the open simplex in log-ratio
//! coordinates with Nelder-Mead restarted from three fixed interior points,
//! then refined by a finite-difference Newton polish. Monotone likelihoods
//! (for example a single table that drew only one category) push the
//! optimum to the simplex boundary; the estimate is then clamped at the
//! weight floor and flagged.

use serde::Serialize;

use crate::coords::{from_simplex, to_simplex};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::likelihood::log_likelihood_raw;
use crate::optim::{nelder_mead, newton_polish};
use crate::urn::{WeightVector, SIMPLEX_FLOOR};

/// Gradient-norm threshold (in log-ratio coordinates) below which a fit is
/// reported as converged.
pub const GRADIENT_TOL: f64 = 1e-4;

const NM_FTOL: f64 = 1e-10;
const NM_MAX_ITERS: usize = 10_000;
const POLISH_STEP: f64 = 1e-5;
const POLISH_GTOL: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct MleResult {
    pub w_hat: WeightVector,
    pub loglik_max: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Set when a component of `w_hat` sits at the configured floor.
    pub boundary_flag: bool,
}

/// Maximizes the shared-weight log-likelihood of `dataset`.
///
/// Errors with [`Error::FlatLikelihood`] when no table carries information
/// about the weights (every table empty or exhaustive, or a single
/// category).
pub fn fit_mle(dataset: &Dataset) -> Result<MleResult> {
    check_informative(dataset)?;
    fit_from_starts(dataset, &starting_points(dataset.k()))
}

/// Refit used by the bootstrap: the same optimization with a single start
/// at `start` (the generating estimate), which is close to the replicate
/// optimum in all but pathological resamples.
pub(crate) fn fit_mle_warm(dataset: &Dataset, start: &WeightVector) -> Result<MleResult> {
    check_informative(dataset)?;
    fit_from_starts(dataset, &[from_simplex(start.components())])
}

fn check_informative(dataset: &Dataset) -> Result<()> {
    dataset.require_shared_binding()?;
    if dataset.k() < 2 || dataset.tables().iter().all(|t| t.is_degenerate()) {
        return Err(Error::FlatLikelihood(
            "no table constrains the weights".into(),
        ));
    }
    Ok(())
}

fn fit_from_starts(dataset: &Dataset, starts: &[Vec<f64>]) -> Result<MleResult> {
    let objective = |z: &[f64]| {
        let w = to_simplex(z);
        let value = log_likelihood_raw(dataset, &w).value;
        if value.is_finite() {
            -value
        } else {
            f64::INFINITY
        }
    };

    let mut iterations = 0;
    let mut nm_converged = false;
    let mut best: Option<(Vec<f64>, f64)> = None;
    for start in starts {
        let r = nelder_mead(&objective, start, 0.5, NM_FTOL, NM_MAX_ITERS);
        iterations += r.iterations;
        if best.as_ref().is_none_or(|(_, fx)| r.fx < *fx) {
            nm_converged = r.converged;
            best = Some((r.x, r.fx));
        }
    }
    let (z_best, _) = best.expect("at least one start");

    let polish = newton_polish(&objective, &z_best, POLISH_STEP, POLISH_GTOL, 15);
    iterations += polish.iterations;
    let grad_norm = polish.grad_norm;

    let w_raw = to_simplex(&polish.x);
    let boundary_flag = w_raw.iter().any(|&v| v <= SIMPLEX_FLOOR);
    // boundary estimates are reported at the simplex floor
    let w_clamped: Vec<f64> = w_raw.iter().map(|&v| v.max(SIMPLEX_FLOOR)).collect();
    let w_hat = WeightVector::new(w_clamped)?;
    let loglik_max = log_likelihood_raw(dataset, w_hat.components()).value;

    Ok(MleResult {
        w_hat,
        loglik_max,
        iterations,
        converged: nm_converged && polish.fx.is_finite() && grad_norm <= GRADIENT_TOL,
        boundary_flag,
    })
}

/// Three fixed interior starts: the uniform center and two points with the
/// first / last category boosted.
fn starting_points(k: usize) -> Vec<Vec<f64>> {
    let uniform = vec![1.0; k];
    let mut first = vec![1.0; k];
    first[0] = 3.0;
    let mut last = vec![1.0; k];
    last[k - 1] = 3.0;
    [uniform, first, last]
        .into_iter()
        .map(|w| {
            let sum: f64 = w.iter().sum();
            let w: Vec<f64> = w.iter().map(|v| v / sum).collect();
            from_simplex(&w)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{simulate_dataset, Binding, Table};
    use crate::optim::norm;
    use crate::urn::{DrawOutcome, UrnSpec};
    use approx::assert_abs_diff_eq;

    fn table(id: &str, counts: &[u64], x: &[u64]) -> Table {
        Table::new(
            id,
            UrnSpec::with_default_labels(counts.to_vec()).unwrap(),
            DrawOutcome::new(x.to_vec()),
        )
        .unwrap()
    }

    #[test]
    fn mirror_tables_force_equal_weights() {
        let d = Dataset::new(
            vec![table("a", &[5, 3], &[2, 1]), table("b", &[3, 5], &[1, 2])],
            Binding::SharedWeights,
        )
        .unwrap();
        let r = fit_mle(&d).unwrap();
        assert!(r.converged);
        assert!(!r.boundary_flag);
        assert_abs_diff_eq!(r.w_hat.components()[0], 0.5, epsilon = 1e-6);
    }

    #[test]
    fn recovers_simulated_weights() {
        let urn = UrnSpec::with_default_labels(vec![10, 10, 10]).unwrap();
        let w = WeightVector::new(vec![0.5, 0.3, 0.2]).unwrap();
        let d = simulate_dataset(&urn, &w, 10, 200, 20260314).unwrap();
        let r = fit_mle(&d).unwrap();
        assert!(r.converged);
        let err = r
            .w_hat
            .components()
            .iter()
            .zip(w.components())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        assert!(err <= 0.05, "L-inf error {err}");
    }

    #[test]
    fn monotone_likelihood_hits_boundary() {
        let d = Dataset::new(vec![table("a", &[1, 1], &[1, 0])], Binding::SharedWeights).unwrap();
        let r = fit_mle(&d).unwrap();
        assert!(r.boundary_flag);
        assert!(r.w_hat.components()[0] > 0.999);
    }

    #[test]
    fn flat_likelihood_is_an_error() {
        let d = Dataset::new(
            vec![table("a", &[2, 2], &[0, 0]), table("b", &[2, 2], &[2, 2])],
            Binding::SharedWeights,
        )
        .unwrap();
        assert!(matches!(fit_mle(&d), Err(Error::FlatLikelihood(_))));
    }

    #[test]
    fn duplicating_the_dataset_leaves_the_argmax_alone() {
        let urn = UrnSpec::with_default_labels(vec![6, 6]).unwrap();
        let w = WeightVector::new(vec![0.7, 0.3]).unwrap();
        let d = simulate_dataset(&urn, &w, 5, 40, 99).unwrap();
        let mut doubled = d.tables().to_vec();
        for t in d.tables() {
            let mut t2 = t.clone();
            t2.id = format!("{}-copy", t.id);
            doubled.push(t2);
        }
        let d2 = Dataset::new(doubled, Binding::SharedWeights).unwrap();
        let r1 = fit_mle(&d).unwrap();
        let r2 = fit_mle(&d2).unwrap();
        let z1 = from_simplex(r1.w_hat.components());
        let z2 = from_simplex(r2.w_hat.components());
        for (a, b) in z1.iter().zip(&z2) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-8);
        }
    }

    #[test]
    fn gradient_vanishes_at_interior_optimum() {
        let urn = UrnSpec::with_default_labels(vec![8, 8, 8]).unwrap();
        let w = WeightVector::new(vec![0.4, 0.35, 0.25]).unwrap();
        let d = simulate_dataset(&urn, &w, 8, 60, 7).unwrap();
        let r = fit_mle(&d).unwrap();
        assert!(!r.boundary_flag);
        let f = |z: &[f64]| -log_likelihood_raw(&d, &to_simplex(z)).value;
        let g = crate::optim::fd_gradient(&f, &from_simplex(r.w_hat.components()), 1e-5);
        assert!(norm(&g) <= 1e-4, "gradient norm {}", norm(&g));
    }
}
