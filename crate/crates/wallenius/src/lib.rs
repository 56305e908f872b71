//! Likelihood and Bayesian inference for biased sampling without
//! replacement under the (multivariate) Wallenius noncentral hypergeometric
//! model.
//!
//! Balls are drawn one at a time from an urn with per-category stocks; each
//! draw picks category `i` with probability proportional to `w_i` times the
//! remaining stock of `i`. The weight vector `w` is identifiable only up to
//! scale and is represented on the probability simplex throughout.
//!
//! The crate provides:
//!
//! - exact and quadrature-based evaluation of the outcome mass
//!   ([`pmf`], [`pmf_oracle`]) and forward simulation ([`simulate_draw`]);
//! - maximum-likelihood estimation of the weights ([`fit_mle`]), Wilks
//!   likelihood-ratio intervals for two categories ([`wilks_interval`]) and
//!   likelihood-contour regions on the 2-simplex ([`likelihood_region`]);
//! - ideal (exhaustive) and parametric bootstrap distributions of the
//!   estimator ([`ideal_bootstrap`], [`parametric_bootstrap`]);
//! - posterior sampling with a simplex-walk Metropolis sampler
//!   ([`run_swm`]), chain diagnostics and credible intervals;
//! - CSV dataset ingestion and canonical JSON result serialization
//!   ([`io`]).
//!
//! ```
//! use wallenius::{pmf, DrawOutcome, UrnSpec, WeightVector};
//!
//! let urn = UrnSpec::with_default_labels(vec![2, 1]).unwrap();
//! let w = WeightVector::new(vec![2.0, 1.0]).unwrap();
//! let p = pmf(&urn, &w, &DrawOutcome::new(vec![2, 0])).unwrap();
//! assert!((p - 8.0 / 15.0).abs() < 1e-10);
//! ```

pub mod bootstrap;
pub mod dataset;
pub mod diagnostics;
pub mod error;
pub mod grid;
pub mod io;
pub mod likelihood;
pub mod mle;
pub mod oracle;
pub mod pmf;
pub mod quad;
pub mod region;
pub mod rng;
pub mod simulate;
pub mod swm;
pub mod urn;
pub mod wilks;

mod coords;
mod optim;

pub use bootstrap::{
    ideal_bootstrap, parametric_bootstrap, BootstrapDistribution, BootstrapKind, Replicate,
};
pub use dataset::{simulate_dataset, Binding, Dataset, Table};
pub use diagnostics::{chain_diagnostics, ChainDiagnostics};
pub use error::{Error, Result};
pub use grid::{evaluate_grid, EvaluatedGrid, ScalarGrid, TernaryGrid};
pub use likelihood::log_likelihood;
pub use mle::{fit_mle, MleResult};
pub use oracle::{enumerate_support, pmf_oracle, OutcomeDistribution};
pub use pmf::{log_pmf, pmf};
pub use region::{likelihood_region, likelihood_region_calibrated, ConfidenceRegion, RegionCalibration};
pub use rng::mix64;
pub use simulate::simulate_draw;
pub use swm::{credible_intervals, run_swm, Chain, CredibleInterval, SwmConfig};
pub use urn::{DrawOutcome, LogDensity, UrnSpec, WeightVector, SIMPLEX_FLOOR, WEIGHT_FLOOR};
pub use wilks::{wilks_interval, WilksInterval};
