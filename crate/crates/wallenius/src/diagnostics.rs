//! Trace diagnostics for finished chains: acceptance, autocorrelation,
//! effective sample size and running means.

use serde::Serialize;

use crate::swm::Chain;

#[derive(Debug, Clone, Serialize)]
pub struct ChainDiagnostics {
    pub accept_rate: f64,
    /// Per-component lag-1 autocorrelation; 1.0 by convention for a
    /// constant (degenerate) component.
    pub lag1_autocorr: Vec<f64>,
    /// Per-component effective sample size from Geyer's initial positive
    /// sequence; 1.0 for a degenerate component.
    pub ess: Vec<f64>,
    pub degenerate: Vec<bool>,
    /// Per-component cumulative means across the retained samples.
    pub running_means: Vec<Vec<f64>>,
}

pub fn chain_diagnostics(chain: &Chain) -> ChainDiagnostics {
    let k = chain.k();
    let mut lag1 = Vec::with_capacity(k);
    let mut ess = Vec::with_capacity(k);
    let mut degenerate = Vec::with_capacity(k);
    let mut running = Vec::with_capacity(k);
    for c in 0..k {
        let series = chain.component(c);
        let stats = SeriesStats::new(&series);
        lag1.push(stats.lag1());
        ess.push(stats.ess_initial_positive());
        degenerate.push(stats.degenerate);
        running.push(running_mean(&series));
    }
    ChainDiagnostics {
        accept_rate: chain.accept_rate,
        lag1_autocorr: lag1,
        ess,
        degenerate,
        running_means: running,
    }
}

struct SeriesStats<'a> {
    series: &'a [f64],
    mean: f64,
    gamma0: f64,
    degenerate: bool,
}

impl<'a> SeriesStats<'a> {
    fn new(series: &'a [f64]) -> Self {
        let n = series.len().max(1) as f64;
        let mean = series.iter().sum::<f64>() / n;
        let gamma0 = series.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
        Self {
            series,
            mean,
            gamma0,
            degenerate: !(gamma0 > 1e-300) || series.len() < 2,
        }
    }

    /// Autocovariance at lag `t` (biased 1/n normalization).
    fn gamma(&self, t: usize) -> f64 {
        let n = self.series.len();
        if t >= n {
            return 0.0;
        }
        let mut acc = 0.0;
        for i in 0..n - t {
            acc += (self.series[i] - self.mean) * (self.series[i + t] - self.mean);
        }
        acc / n as f64
    }

    fn lag1(&self) -> f64 {
        if self.degenerate {
            return 1.0;
        }
        self.gamma(1) / self.gamma0
    }

    /// ESS via Geyer's initial positive sequence: sum paired
    /// autocovariances while the pair sums stay positive.
    fn ess_initial_positive(&self) -> f64 {
        if self.degenerate {
            return 1.0;
        }
        let n = self.series.len();
        let mut tau_var = -self.gamma0;
        let mut t = 0usize;
        while t + 1 < n {
            let pair = self.gamma(t) + self.gamma(t + 1);
            if pair <= 0.0 {
                break;
            }
            tau_var += 2.0 * pair;
            t += 2;
        }
        (n as f64 * self.gamma0 / tau_var).clamp(1.0, n as f64)
    }
}

fn running_mean(series: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    series
        .iter()
        .enumerate()
        .map(|(i, x)| {
            acc += x;
            acc / (i + 1) as f64
        })
        .collect()
}
