//! The multivariate Wallenius noncentral hypergeometric mass function.
//!
//! For an urn with per-category counts `m`, weights `w` and an observed draw
//! `x` with total `n`, the mass is
//!
//! ```text
//! P(X = x) = prod_i C(m_i, x_i) * Int_0^1 prod_i (1 - t^(w_i / D))^(x_i) dt,
//! D = sum_i w_i * (m_i - x_i).
//! ```
//!
//! The integral is evaluated after the substitution `t = exp(-u)`, which
//! turns the endpoint boundary layers that appear for extreme weights into
//! interior features on scales `1 / e_i` (`e_i = w_i / D`):
//!
//! ```text
//! Int_0^inf exp(-u) * prod_i (1 - exp(-u * e_i))^(x_i) du.
//! ```
//!
//! Each factor is evaluated in log space and the integral by adaptive
//! Gauss-Legendre quadrature seeded with breakpoints at the layer scales,
//! then re-integrated at a tolerance proportional to the first estimate so
//! small masses retain full relative precision.

use std::sync::OnceLock;

use statrs::function::factorial::ln_binomial;
use statrs::function::gamma::ln_gamma;

use crate::error::Result;
use crate::quad::AdaptiveQuad;
use crate::urn::{DrawOutcome, LogDensity, UrnSpec, WeightVector};

/// Relative quadrature tolerance; two orders tighter than the strictest
/// downstream equivalence bound (1e-10).
const QUAD_TOL_REL: f64 = 3e-12;
/// Interval-splitting depth limit.
const QUAD_MAX_DEPTH: u32 = 20;
/// Quadrature totals below this floor are reported as underflow.
const QUAD_UNDERFLOW_FLOOR: f64 = 1e-300;
/// Truncation point of the substituted integral; `exp(-U)` is below the
/// underflow floor there.
const U_MAX: f64 = 700.0;

fn quad() -> &'static AdaptiveQuad {
    static QUAD: OnceLock<AdaptiveQuad> = OnceLock::new();
    QUAD.get_or_init(|| AdaptiveQuad::new(21, QUAD_MAX_DEPTH))
}

/// Probability of drawing exactly `x` from `urn` under weights `w`.
///
/// Errors on dimension mismatches and on outcomes that exceed the stock;
/// both are detected before any quadrature runs.
pub fn pmf(urn: &UrnSpec, w: &WeightVector, x: &DrawOutcome) -> Result<f64> {
    let ld = log_pmf(urn, w, x)?;
    Ok(ld.value.exp().clamp(0.0, 1.0))
}

/// Natural log of [`pmf`], with an underflow marker instead of a hard zero.
pub fn log_pmf(urn: &UrnSpec, w: &WeightVector, x: &DrawOutcome) -> Result<LogDensity> {
    if w.len() != urn.k() {
        return Err(crate::error::Error::DimensionMismatch(format!(
            "{} weights for {} categories",
            w.len(),
            urn.k()
        )));
    }
    urn.validate_outcome(x)?;
    Ok(log_mass_unchecked(urn.counts(), w.components(), x.counts()))
}

/// Mass evaluation on raw slices. Callers guarantee matching lengths,
/// `x_i <= m_i` and strictly positive weights; this is the hot path shared
/// by the checked API, likelihood evaluation and the optimizers.
pub(crate) fn log_mass_unchecked(m: &[u64], w: &[f64], x: &[u64]) -> LogDensity {
    let n: u64 = x.iter().sum();
    if n == 0 {
        return LogDensity::finite(0.0);
    }
    if x == m {
        // exhaustive draw empties the urn with certainty
        return LogDensity::finite(0.0);
    }

    let d: f64 = m
        .iter()
        .zip(x)
        .zip(w)
        .map(|((&mi, &xi), &wi)| wi * (mi - xi) as f64)
        .sum();
    debug_assert!(d > 0.0);

    let mut ln_choose = 0.0;
    let mut terms: Vec<(f64, f64)> = Vec::with_capacity(m.len()); // (x_i, e_i)
    for ((&mi, &xi), &wi) in m.iter().zip(x).zip(w) {
        if xi > 0 {
            ln_choose += ln_binomial(mi, xi);
            terms.push((xi as f64, wi / d));
        }
    }

    if let [(xi, ei)] = terms[..] {
        // single drawn category: the integral is a beta function,
        // Int_0^1 (1 - t^e)^x dt = G(1/e + 1) G(x + 1) / G(1/e + x + 1)
        let inv_e = 1.0 / ei;
        let log_integral =
            ln_gamma(inv_e + 1.0) + ln_gamma(xi + 1.0) - ln_gamma(inv_e + xi + 1.0);
        return LogDensity::finite((ln_choose + log_integral).min(0.0));
    }

    let f = |u: f64| {
        let mut g = -u;
        for &(xi, ei) in &terms {
            // ln(1 - exp(-u*e)) via expm1 to stay accurate for small u*e
            g += xi * (-(-u * ei).exp_m1()).ln();
        }
        g.exp()
    };

    let points = breakpoints(&terms);
    let integral = quad().integrate_relative(&points, QUAD_TOL_REL, &f).value;
    if !(integral > QUAD_UNDERFLOW_FLOOR) {
        return LogDensity::underflowed();
    }
    LogDensity::finite((ln_choose + integral.ln()).min(0.0))
}

/// Panel boundaries for the substituted integrand: the layer scales `1/e_i`
/// merged up to a factor of four, a knee for the `exp(-u)` envelope, and
/// the truncation point.
fn breakpoints(terms: &[(f64, f64)]) -> Vec<f64> {
    let mut scales: Vec<f64> = terms
        .iter()
        .map(|&(_, ei)| (1.0 / ei).clamp(1e-12, 60.0))
        .collect();
    scales.extend([1.0, 4.0, 16.0, 60.0]);
    scales.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut pts = vec![0.0];
    for s in scales {
        if s > 4.0 * pts.last().unwrap() {
            pts.push(s);
        }
    }
    pts.push(U_MAX);
    pts
}
