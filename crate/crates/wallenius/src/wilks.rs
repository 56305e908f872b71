//! Wilks likelihood-ratio intervals for the two-category (scalar) case.
//!
//! With two categories the weight model has one free coordinate `w1`. The
//! interval at confidence `level` collects every `w1` whose likelihood-ratio
//! statistic `2 * (l(w_hat) - l(w1))` stays below the chi-square(1)
//! quantile; its endpoints are found by bisection on each side of the MLE.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::likelihood::log_likelihood_raw;
use crate::mle::fit_mle;
use crate::urn::WEIGHT_FLOOR;

#[derive(Debug, Clone, Serialize)]
pub struct WilksInterval {
    pub level: f64,
    pub lower: f64,
    pub upper: f64,
    /// Marks endpoints that ran into the simplex edge before reaching the
    /// chi-square threshold.
    pub at_boundary: (bool, bool),
}

/// Chi-square quantile with `df` degrees of freedom.
pub fn chi_square_quantile(df: f64, p: f64) -> f64 {
    ChiSquared::new(df).expect("valid dof").inverse_cdf(p)
}

/// Likelihood-ratio interval for the first weight component of a
/// two-category dataset.
pub fn wilks_interval(dataset: &Dataset, level: f64) -> Result<WilksInterval> {
    if dataset.k() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "Wilks intervals need 2 categories, got {}",
            dataset.k()
        )));
    }
    if !(0.0 < level && level < 1.0) {
        return Err(Error::Domain(format!("level {level} outside (0,1)")));
    }

    let mle = fit_mle(dataset)?;
    if mle.boundary_flag {
        return Err(Error::BoundaryMle(
            "MLE sits on the simplex boundary; report a one-sided interval from the \
             likelihood curve instead"
                .into(),
        ));
    }
    if !mle.converged {
        return Err(Error::NonConvergence("MLE fit did not converge".into()));
    }

    let w_hat = mle.w_hat.components()[0];
    let threshold = chi_square_quantile(1.0, level);
    // LR statistic minus the threshold, as a function of w1
    let g = |w1: f64| {
        2.0 * (mle.loglik_max - log_likelihood_raw(dataset, &[w1, 1.0 - w1]).value) - threshold
    };

    let edge_lo = WEIGHT_FLOOR;
    let edge_hi = 1.0 - WEIGHT_FLOOR;
    let (lower, lo_bounded) = if g(edge_lo) < 0.0 {
        (edge_lo, true)
    } else {
        (bisect(&g, edge_lo, w_hat), false)
    };
    let (upper, hi_bounded) = if g(edge_hi) < 0.0 {
        (edge_hi, true)
    } else {
        (bisect(&g, edge_hi, w_hat), false)
    };

    Ok(WilksInterval {
        level,
        lower,
        upper,
        at_boundary: (lo_bounded, hi_bounded),
    })
}

/// Root of `g` between `outside` (g >= 0) and `inside` (g < 0).
fn bisect<F: Fn(f64) -> f64>(g: &F, mut outside: f64, mut inside: f64) -> f64 {
    for _ in 0..100 {
        let mid = 0.5 * (outside + inside);
        if (outside - inside).abs() <= 1e-13 {
            return mid;
        }
        if g(mid) >= 0.0 {
            outside = mid;
        } else {
            inside = mid;
        }
    }
    0.5 * (outside + inside)
}
