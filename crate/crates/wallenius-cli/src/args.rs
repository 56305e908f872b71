//! Command-line surface. Every stochastic subcommand takes `--seed`, which
//! falls back to the `WALLENIUS_SEED` environment variable and then to 7.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "wallenius",
    about = "Likelihood and Bayesian inference for biased urns \
             (Wallenius noncentral hypergeometric model)",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BindingArg {
    Shared,
    PerUnit,
}

impl From<BindingArg> for wallenius::Binding {
    fn from(b: BindingArg) -> Self {
        match b {
            BindingArg::Shared => wallenius::Binding::SharedWeights,
            BindingArg::PerUnit => wallenius::Binding::PerUnitWeights,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BootKind {
    Ideal,
    Parametric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CalibrationArg {
    ChiSquare,
    Relative,
}

impl From<CalibrationArg> for wallenius::RegionCalibration {
    fn from(c: CalibrationArg) -> Self {
        match c {
            CalibrationArg::ChiSquare => wallenius::RegionCalibration::ChiSquare,
            CalibrationArg::Relative => wallenius::RegionCalibration::RelativeLikelihood,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the outcome probability for one urn, weight vector and draw
    Pmf {
        /// Per-category ball counts, e.g. 2,1
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<u64>,
        /// Category weights (any positive scale), e.g. 0.667,0.333
        #[arg(long, value_delimiter = ',', required = true)]
        w: Vec<f64>,
        /// Drawn counts per category, e.g. 2,0
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
        /// Category labels (default c1..cK)
        #[arg(long, value_delimiter = ',')]
        labels: Option<Vec<String>>,
        /// Result JSON path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Simulate a dataset of independent tables and write it as CSV
    Simulate {
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        w: Vec<f64>,
        /// Draws per table
        #[arg(long)]
        n: u64,
        /// Number of tables
        #[arg(long = "T")]
        t: usize,
        /// Expected number of categories (checked against --m)
        #[arg(long = "K")]
        k: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        labels: Option<Vec<String>>,
        #[arg(long, env = "WALLENIUS_SEED", default_value_t = 7)]
        seed: u64,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
    },

    /// Maximum-likelihood estimate of the weights
    Mle {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Wilks likelihood-ratio interval (2 categories)
    Wilks {
        #[arg(long)]
        data: PathBuf,
        /// Confidence level
        #[arg(long, default_value_t = 0.95)]
        level: f64,
        /// Likelihood-curve grid resolution (for --svg)
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Likelihood-curve figure path
        #[arg(long)]
        svg: Option<PathBuf>,
    },

    /// Likelihood confidence regions on the 2-simplex (3 categories)
    Region {
        #[arg(long)]
        data: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = [0.95, 0.5, 0.05])]
        levels: Vec<f64>,
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        #[arg(long, value_enum, default_value_t = CalibrationArg::ChiSquare)]
        calibration: CalibrationArg,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Ternary figure path
        #[arg(long)]
        svg: Option<PathBuf>,
    },

    /// Bootstrap distribution of the weight MLE
    Boot {
        #[arg(long)]
        data: PathBuf,
        /// ideal (exhaustive; single-table designs) or parametric
        /// (default: ideal for one table, else parametric)
        #[arg(long, value_enum)]
        kind: Option<BootKind>,
        /// Parametric replication count
        #[arg(long = "B", default_value_t = 500)]
        b: usize,
        #[arg(long, env = "WALLENIUS_SEED", default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Posterior sampling with the simplex-walk Metropolis sampler
    Swm {
        /// Dataset CSV; omit for a prior-only run (requires --K or --w0)
        #[arg(long)]
        data: Option<PathBuf>,
        /// Retained post-burn-in iterations
        #[arg(long)]
        iters: usize,
        /// Burn-in iterations (default 10% of --iters)
        #[arg(long)]
        burnin: Option<usize>,
        /// Starting weights (default uniform)
        #[arg(long, value_delimiter = ',')]
        w0: Option<Vec<f64>>,
        /// Proposal spread in log-ratio coordinates
        #[arg(long, default_value_t = 0.15)]
        step: f64,
        /// Symmetric Dirichlet prior concentration
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Tune the step scale towards 30% acceptance during burn-in
        #[arg(long)]
        adapt: bool,
        /// Number of categories for prior-only runs
        #[arg(long = "K")]
        k: Option<usize>,
        #[arg(long, env = "WALLENIUS_SEED", default_value_t = 7)]
        seed: u64,
        /// Chain CSV path
        #[arg(long, default_value = "chain.csv")]
        chain: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Trace-panel figure path
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Credible-interval level for the summary
        #[arg(long, default_value_t = 0.95)]
        level: f64,
    },

    /// Run the full pipeline and write results and figures to a directory
    Report {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        /// shared: one weight vector for all tables; per-unit: an
        /// independent fit/posterior per table (with an error-bar figure)
        #[arg(long, value_enum, default_value_t = BindingArg::Shared)]
        binding: BindingArg,
        #[arg(long, env = "WALLENIUS_SEED", default_value_t = 7)]
        seed: u64,
        /// SWM iterations per chain
        #[arg(long, default_value_t = 10_000)]
        iters: usize,
        /// Parametric bootstrap replications
        #[arg(long = "B", default_value_t = 100)]
        b: usize,
        #[arg(long, default_value_t = 150)]
        resolution: usize,
        #[arg(long, default_value_t = 0.95)]
        level: f64,
    },
}
