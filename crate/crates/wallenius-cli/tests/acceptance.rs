//! Acceptance suite: one test per criterion, each printing a PASS line
//! (run with `--nocapture` to see them). Tolerances and runtime bounds are
//! pinned here and nowhere else.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use wallenius::io::format_float;
use wallenius::{
    credible_intervals, enumerate_support, fit_mle, ideal_bootstrap, log_likelihood, pmf,
    pmf_oracle, run_swm, simulate_dataset, wilks_interval, Binding, Dataset, DrawOutcome,
    SwmConfig, Table, UrnSpec, WeightVector,
};
use wallenius_cli::render::{render_ternary, render_trace_panel, LabeledPoint};

const WEIGHT_GRID: [f64; 4] = [0.2, 0.5, 1.0, 2.0];

fn pass(name: &str) {
    println!("ACCEPTANCE PASS: {name}");
}

/// All urns with K categories, each stock in `0..=4`, at least one ball.
fn urn_sweep(k: usize) -> Vec<UrnSpec> {
    let mut counts = vec![0u64; k];
    let mut out = Vec::new();
    loop {
        if counts.iter().sum::<u64>() >= 1 {
            out.push(UrnSpec::with_default_labels(counts.clone()).unwrap());
        }
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            counts[i] += 1;
            if counts[i] <= 4 {
                break;
            }
            counts[i] = 0;
            i += 1;
        }
    }
}

/// All weight vectors with components from the fixed grid.
fn weight_sweep(k: usize) -> Vec<WeightVector> {
    let mut idx = vec![0usize; k];
    let mut out = Vec::new();
    loop {
        let raw: Vec<f64> = idx.iter().map(|&i| WEIGHT_GRID[i]).collect();
        out.push(WeightVector::new(raw).unwrap());
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            idx[i] += 1;
            if idx[i] < WEIGHT_GRID.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

fn for_each_sweep_case(mut visit: impl FnMut(&UrnSpec, &WeightVector, &[DrawOutcome])) {
    for k in 1..=3usize {
        for urn in urn_sweep(k) {
            let n_max = urn.total().min(6);
            for w in weight_sweep(k) {
                for n in 0..=n_max {
                    let support = enumerate_support(urn.counts(), n);
                    visit(&urn, &w, &support);
                }
            }
        }
    }
}

#[test]
fn a01_oracle_equivalence_on_the_full_sweep() {
    let start = Instant::now();
    let mut cases = 0u64;
    for_each_sweep_case(|urn, w, support| {
        for x in support {
            let exact = pmf_oracle(urn, w, x).unwrap();
            let quadr = pmf(urn, w, x).unwrap();
            assert!(
                (quadr - exact).abs() <= 1e-9 * exact.max(1e-300),
                "pmf {quadr} vs oracle {exact} at m={:?} w={:?} x={:?}",
                urn.counts(),
                w.components(),
                x.counts()
            );
            cases += 1;
        }
    });
    let elapsed = start.elapsed();
    assert!(cases > 100_000, "sweep visited only {cases} cases");
    assert!(elapsed.as_secs() < 60, "sweep took {elapsed:?}");
    pass(&format!(
        "oracle equivalence: {cases} cases within 1e-9 relative in {elapsed:.1?}"
    ));
}

#[test]
fn a02_normalization_over_the_full_support() {
    let mut checked = 0u64;
    for_each_sweep_case(|urn, w, support| {
        let total: f64 = support.iter().map(|x| pmf(urn, w, x).unwrap()).sum();
        assert!(
            (total - 1.0).abs() <= 1e-9,
            "support mass {total} at m={:?} w={:?} n={}",
            urn.counts(),
            w.components(),
            support.first().map_or(0, |x| x.n())
        );
        checked += 1;
    });
    pass(&format!(
        "normalization: {checked} (urn, w, n) supports sum to 1 within 1e-9"
    ));
}

#[test]
fn a03_equal_weights_reduce_to_the_central_distribution() {
    let mut checked = 0u64;
    for k in 1..=3usize {
        let w = WeightVector::uniform(k).unwrap();
        for urn in urn_sweep(k) {
            let m_total = urn.total();
            for n in 0..=m_total.min(6) {
                let ln_denominator = ln_choose(m_total, n);
                for x in enumerate_support(urn.counts(), n) {
                    let ln_numerator: f64 = urn
                        .counts()
                        .iter()
                        .zip(x.counts())
                        .map(|(&mi, &xi)| ln_choose(mi, xi))
                        .sum();
                    let central = (ln_numerator - ln_denominator).exp();
                    let p = pmf(&urn, &w, &x).unwrap();
                    assert!(
                        (p - central).abs() <= 1e-10 * central.max(1e-300),
                        "pmf {p} vs central {central} at m={:?} x={:?}",
                        urn.counts(),
                        x.counts()
                    );
                    checked += 1;
                }
            }
        }
    }
    pass(&format!(
        "central reduction: {checked} equal-weight masses within 1e-10"
    ));
}

/// Independent binomial-coefficient route for the central oracle.
fn ln_choose(n: u64, k: u64) -> f64 {
    (1..=k).map(|i| (((n - k + i) as f64) / (i as f64)).ln()).sum()
}

#[test]
fn a04_scale_invariance_of_the_weights() {
    let mut checked = 0u64;
    for_each_sweep_case(|urn, w, support| {
        // re-scale the (already normalized) weights before re-normalizing
        for c in [1e-3, 1.0, 1e3] {
            let scaled =
                WeightVector::new(w.components().iter().map(|&v| v * c).collect()).unwrap();
            for x in support {
                let a = pmf(urn, w, x).unwrap();
                let b = pmf(urn, &scaled, x).unwrap();
                assert!(
                    (a - b).abs() <= 1e-10,
                    "scale {c} changed pmf {a} -> {b} at m={:?} x={:?}",
                    urn.counts(),
                    x.counts()
                );
                checked += 1;
            }
        }
    });
    pass(&format!(
        "scale invariance: {checked} pre-scaled evaluations within 1e-10"
    ));
}

fn recovery_dataset() -> (Dataset, WeightVector) {
    let urn = UrnSpec::with_default_labels(vec![10, 10, 10]).unwrap();
    let w = WeightVector::new(vec![0.5, 0.3, 0.2]).unwrap();
    let data = simulate_dataset(&urn, &w, 10, 200, 20260314).unwrap();
    (data, w)
}

#[test]
fn a05_mle_recovers_simulated_weights() {
    let start = Instant::now();
    let (data, truth) = recovery_dataset();
    let mle = fit_mle(&data).unwrap();
    assert!(mle.converged);
    let err = mle
        .w_hat
        .components()
        .iter()
        .zip(truth.components())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    assert!(err <= 0.05, "L-inf error {err}");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "MLE recovery took {elapsed:?}");
    pass(&format!(
        "MLE recovery: L-inf {err:.4} <= 0.05 in {elapsed:.1?}"
    ));
}

#[test]
fn a06_wilks_endpoints_meet_the_chi_square_threshold() {
    let urn = UrnSpec::with_default_labels(vec![10, 10]).unwrap();
    let w = WeightVector::new(vec![0.65, 0.35]).unwrap();
    let data = simulate_dataset(&urn, &w, 8, 30, 17).unwrap();
    let mle = fit_mle(&data).unwrap();

    let chi1_95 = 3.841458820694124; // chi-square(1) 0.95 quantile
    let iv = wilks_interval(&data, 0.95).unwrap();
    assert!(!iv.at_boundary.0 && !iv.at_boundary.1);
    let mut worst: f64 = 0.0;
    for w1 in [iv.lower, iv.upper] {
        let probe = WeightVector::new(vec![w1, 1.0 - w1]).unwrap();
        let lr = 2.0 * (mle.loglik_max - log_likelihood(&data, &probe).unwrap().value);
        worst = worst.max((lr - chi1_95).abs());
    }
    assert!(worst <= 1e-6, "endpoint residual {worst}");

    let narrow = wilks_interval(&data, 0.5).unwrap();
    assert!(iv.lower < narrow.lower && narrow.upper < iv.upper, "intervals must nest");
    pass(&format!(
        "Wilks endpoints: residual {worst:.2e} <= 1e-6, levels 0.5/0.95 nested"
    ));
}

#[test]
fn a07_ideal_bootstrap_is_exact() {
    let small = UrnSpec::with_default_labels(vec![2, 1]).unwrap();
    let boot = ideal_bootstrap(&small, &WeightVector::new(vec![2.0, 1.0]).unwrap(), 2).unwrap();
    assert_eq!(boot.replicates.len(), 2, "support of m=(2,1), n=2");

    let urn = UrnSpec::with_default_labels(vec![6, 6]).unwrap();
    let w_hat = WeightVector::new(vec![0.65, 0.35]).unwrap();
    let boot = ideal_bootstrap(&urn, &w_hat, 5).unwrap();
    let total: f64 = boot.replicates.iter().map(|r| r.mass).sum();
    assert!((total - 1.0).abs() <= 1e-9, "masses sum to {total}");

    // independent recomputation: sum w_star(x) * pmf(x | w_hat) over the
    // enumerated support, accumulated in reverse order
    let support = enumerate_support(urn.counts(), 5);
    assert_eq!(support.len(), boot.replicates.len());
    let mut mean = [0.0f64; 2];
    let mut mass = 0.0;
    for (x, r) in support.iter().zip(&boot.replicates).rev() {
        if r.converged {
            let p = pmf(&urn, &w_hat, x).unwrap();
            mass += p;
            mean[0] += p * r.w_star.components()[0];
            mean[1] += p * r.w_star.components()[1];
        }
    }
    let expected = [mean[0] / mass, mean[1] / mass];
    let got = boot.mean();
    let diff = (got[0] - expected[0]).abs().max((got[1] - expected[1]).abs());
    assert!(diff <= 1e-12, "mean recomputation differs by {diff}");
    pass(&format!(
        "ideal bootstrap: masses sum to 1, mean recomputed within {diff:.1e}, support count exact"
    ));
}

#[test]
fn a08_swm_posterior_sampling_is_correct() {
    let start = Instant::now();

    // discretized-posterior total variation on a 2-category problem
    let urn = UrnSpec::with_default_labels(vec![10, 10]).unwrap();
    let table = Table::new("t", urn, DrawOutcome::new(vec![7, 3])).unwrap();
    let data = Dataset::new(vec![table], Binding::SharedWeights).unwrap();
    let config = SwmConfig {
        step_scale: 0.4,
        ..SwmConfig::new(500_000, WeightVector::uniform(2).unwrap(), 424242)
    };
    let chain = run_swm(&data, &config).unwrap();

    let bins = 50usize;
    let sub = 10usize;
    let mut target = vec![0.0f64; bins];
    for (b, t) in target.iter_mut().enumerate() {
        for s in 0..sub {
            let w1 = (b as f64 + (s as f64 + 0.5) / sub as f64) / bins as f64;
            let probe = WeightVector::new(vec![w1.max(1e-6), 1.0 - w1.max(1e-6)]).unwrap();
            // uniform prior: the posterior density is the likelihood
            *t += log_likelihood(&data, &probe).unwrap().value.exp();
        }
    }
    let norm: f64 = target.iter().sum();
    for t in &mut target {
        *t /= norm;
    }
    let mut hist = vec![0.0f64; bins];
    for s in &chain.samples {
        let b = ((s.components()[0] * bins as f64) as usize).min(bins - 1);
        hist[b] += 1.0 / chain.samples.len() as f64;
    }
    let tv: f64 = 0.5 * target.iter().zip(&hist).map(|(a, b)| (a - b).abs()).sum::<f64>();
    assert!(tv <= 0.05, "total variation {tv}");

    // no-data run recovers the Beta(1,1) equal-tailed interval
    let prior_urn = UrnSpec::with_default_labels(vec![1, 1]).unwrap();
    let prior_table = Table::new("none", prior_urn, DrawOutcome::new(vec![0, 0])).unwrap();
    let prior_data = Dataset::new(vec![prior_table], Binding::SharedWeights).unwrap();
    let config = SwmConfig {
        step_scale: 1.2,
        ..SwmConfig::new(100_000, WeightVector::uniform(2).unwrap(), 4)
    };
    let prior_chain = run_swm(&prior_data, &config).unwrap();
    let ci = credible_intervals(&prior_chain, 0.95).unwrap();
    let beta_err = (ci.lower[0] - 0.025).abs().max((ci.upper[0] - 0.975).abs());
    assert!(beta_err <= 0.01, "Beta(1,1) interval error {beta_err}");

    // posterior mean tracks the MLE on the simulated 3-category dataset
    let (data3, _) = recovery_dataset();
    let mle = fit_mle(&data3).unwrap();
    let config = SwmConfig::new(4000, WeightVector::uniform(3).unwrap(), 99);
    let chain3 = run_swm(&data3, &config).unwrap();
    let ci3 = credible_intervals(&chain3, 0.95).unwrap();
    let mean_err = ci3
        .posterior_mean
        .components()
        .iter()
        .zip(mle.w_hat.components())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    assert!(mean_err <= 0.05, "posterior mean vs MLE L-inf {mean_err}");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 180, "SWM checks took {elapsed:?}");
    pass(&format!(
        "SWM: TV {tv:.3} <= 0.05, Beta interval error {beta_err:.4} <= 0.01, \
         posterior-mean vs MLE {mean_err:.4} <= 0.05, in {elapsed:.1?}"
    ));
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wallenius"))
}

fn run_ok(dir: &Path, args: &[&str]) {
    let out = bin()
        .args(args)
        .current_dir(dir)
        .env_remove("WALLENIUS_SEED")
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

/// Runs every stochastic subcommand twice with the same seed and demands
/// byte-identical files.
#[test]
fn a09_stochastic_subcommands_are_byte_deterministic() {
    let make_outputs = |dir: &Path| {
        run_ok(
            dir,
            &[
                "simulate", "--m", "8,8,8", "--n", "8", "--w", "0.5,0.3,0.2", "--T", "12",
                "--seed", "4", "--out", "d.csv",
            ],
        );
        run_ok(
            dir,
            &[
                "boot", "--data", "d.csv", "--kind", "parametric", "--B", "40", "--seed", "9",
                "--out", "boot.json",
            ],
        );
        run_ok(
            dir,
            &[
                "swm", "--data", "d.csv", "--iters", "2000", "--burnin", "200", "--seed", "3",
                "--chain", "chain.csv", "--out", "swm.json", "--svg", "trace.svg",
            ],
        );
        run_ok(
            dir,
            &[
                "region", "--data", "d.csv", "--resolution", "60", "--out", "region.json",
                "--svg", "regions.svg",
            ],
        );
        run_ok(
            dir,
            &[
                "report", "--data", "d.csv", "--out-dir", "rep", "--iters", "1500", "--B",
                "20", "--resolution", "60", "--seed", "1",
            ],
        );
    };

    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    make_outputs(a.path());
    make_outputs(b.path());

    let files = [
        "d.csv",
        "boot.json",
        "chain.csv",
        "swm.json",
        "trace.svg",
        "region.json",
        "regions.svg",
        "rep/report.json",
        "rep/chain.csv",
        "rep/trace.svg",
        "rep/regions.svg",
    ];
    for f in files {
        let x = fs::read(a.path().join(f)).unwrap_or_else(|_| panic!("missing {f}"));
        let y = fs::read(b.path().join(f)).unwrap();
        assert_eq!(x, y, "{f} differs between identically seeded runs");
    }
    pass(&format!(
        "determinism: {} regenerated files byte-identical across reruns",
        files.len()
    ));
}

#[test]
fn a10_figure_fixtures_render_well_formed_svg() {
    // two reference estimates on one ternary diagram
    let points = vec![
        LabeledPoint::circle("unit 20", [0.305, 0.303, 0.392]),
        LabeledPoint::circle("unit 108", [0.095, 0.071, 0.834]),
    ];
    let svg = render_ternary(&[], &points, &[]).unwrap();
    let doc = roxmltree::Document::parse(&svg).expect("well-formed ternary SVG");
    let markers = doc
        .descendants()
        .filter(|n| n.has_tag_name("circle") && n.attribute("class") == Some("point-marker"))
        .count();
    assert_eq!(markers, 2);
    let labels: Vec<&str> = doc
        .descendants()
        .filter(|n| n.attribute("class") == Some("point-label"))
        .filter_map(|n| n.text())
        .collect();
    assert_eq!(labels, vec!["unit 20", "unit 108"]);

    // five labeled trace panels
    let labels: Vec<String> = ["C", "M", "S", "E", "P"].iter().map(|s| s.to_string()).collect();
    let series: Vec<Vec<f64>> = (0..5)
        .map(|k| {
            (0..2000)
                .map(|i| 0.2 + 0.002 * ((i * (k + 3)) % 97) as f64)
                .collect()
        })
        .collect();
    let svg = render_trace_panel(&series, &labels).unwrap();
    let doc = roxmltree::Document::parse(&svg).expect("well-formed trace SVG");
    let panel_labels: Vec<&str> = doc
        .descendants()
        .filter(|n| n.attribute("class") == Some("panel-label"))
        .filter_map(|n| n.text())
        .collect();
    assert_eq!(panel_labels, vec!["C", "M", "S", "E", "P"]);
    pass("figure fixtures: ternary reference points and C/M/S/E/P trace panels render well-formed");
}

#[test]
fn a11_reference_values_serialize_verbatim() {
    // formatting fixture for result files
    assert_eq!(format_float(0.346), "0.346");
    assert_eq!(format_float(0.228), "0.228");
    assert_eq!(format_float(0.426), "0.426");
    pass("canonical JSON formats reference weight components verbatim");
}
