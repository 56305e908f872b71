//! Subcommand implementations: run the analysis, write canonical JSON
//! results (stdout unless `--out` is given) and optional SVG figures.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use wallenius::io::{canonical_json, parse_dataset, write_chain_csv, write_dataset};
use wallenius::{
    chain_diagnostics, credible_intervals, fit_mle, ideal_bootstrap, likelihood_region_calibrated,
    log_pmf, parametric_bootstrap, pmf, run_swm, simulate_dataset, wilks_interval, Binding, Chain,
    ConfidenceRegion, Dataset, DrawOutcome, Error, EvaluatedGrid, MleResult, Result, SwmConfig,
    Table, UrnSpec, WeightVector,
};

use crate::args::{BindingArg, BootKind, CalibrationArg, Cli, Command};
use crate::render::{
    render_errorbars, render_likelihood_1d, render_ternary, render_trace_panel, LabeledPoint,
    UnitSummary,
};

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Pmf { m, w, x, labels, out } => cmd_pmf(m, w, x, labels, out),
        Command::Simulate { m, w, n, t, k, labels, seed, out } => {
            cmd_simulate(m, w, n, t, k, labels, seed, out)
        }
        Command::Mle { data, out } => cmd_mle(&data, out),
        Command::Wilks { data, level, resolution, out, svg } => {
            cmd_wilks(&data, level, resolution, out, svg)
        }
        Command::Region { data, levels, resolution, calibration, out, svg } => {
            cmd_region(&data, &levels, resolution, calibration, out, svg)
        }
        Command::Boot { data, kind, b, seed, out } => cmd_boot(&data, kind, b, seed, out),
        Command::Swm {
            data,
            iters,
            burnin,
            w0,
            step,
            alpha,
            adapt,
            k,
            seed,
            chain,
            out,
            svg,
            level,
        } => cmd_swm(SwmArgs {
            data,
            iters,
            burnin,
            w0,
            step,
            alpha,
            adapt,
            k,
            seed,
            chain,
            out,
            svg,
            level,
        }),
        Command::Report { data, out_dir, binding, seed, iters, b, resolution, level } => {
            cmd_report(&data, &out_dir, binding, seed, iters, b, resolution, level)
        }
    }
}

fn emit(value: &Value, out: Option<PathBuf>) -> Result<()> {
    let text = canonical_json(value);
    match out {
        Some(path) => fs::write(&path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn write_svg(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content)?;
    Ok(())
}

fn build_urn(m: Vec<u64>, labels: Option<Vec<String>>) -> Result<UrnSpec> {
    match labels {
        Some(l) => UrnSpec::new(m, l),
        None => UrnSpec::with_default_labels(m),
    }
}

fn weights_json(w: &WeightVector) -> Value {
    json!(w.components())
}

fn mle_json(mle: &MleResult) -> Value {
    json!({
        "w_hat": weights_json(&mle.w_hat),
        "loglik_max": mle.loglik_max,
        "iterations": mle.iterations,
        "converged": mle.converged,
        "boundary": mle.boundary_flag,
    })
}

fn cmd_pmf(
    m: Vec<u64>,
    w: Vec<f64>,
    x: Vec<u64>,
    labels: Option<Vec<String>>,
    out: Option<PathBuf>,
) -> Result<()> {
    let urn = build_urn(m, labels)?;
    let weights = WeightVector::new(w)?;
    let outcome = DrawOutcome::new(x);
    let p = pmf(&urn, &weights, &outcome)?;
    let ld = log_pmf(&urn, &weights, &outcome)?;
    emit(
        &json!({
            "labels": urn.labels(),
            "m": urn.counts(),
            "w": weights_json(&weights),
            "x": outcome.counts(),
            "n": outcome.n(),
            "pmf": p,
            "log_pmf": ld.value,
            "underflow": ld.underflow,
        }),
        out,
    )
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    m: Vec<u64>,
    w: Vec<f64>,
    n: u64,
    t: usize,
    k: Option<usize>,
    labels: Option<Vec<String>>,
    seed: u64,
    out: PathBuf,
) -> Result<()> {
    if let Some(k) = k {
        if k != m.len() {
            return Err(Error::Validation(format!(
                "--K {k} does not match the {} categories in --m",
                m.len()
            )));
        }
    }
    let urn = build_urn(m, labels)?;
    let weights = WeightVector::new(w)?;
    let dataset = simulate_dataset(&urn, &weights, n, t, seed)?;
    write_dataset(&dataset, &out)?;
    emit(
        &json!({
            "out": out.display().to_string(),
            "tables": t,
            "n": n,
            "seed": seed,
            "labels": urn.labels(),
        }),
        None,
    )
}

fn cmd_mle(data: &Path, out: Option<PathBuf>) -> Result<()> {
    let dataset = parse_dataset(data, Binding::SharedWeights)?;
    let mle = fit_mle(&dataset)?;
    let mut value = mle_json(&mle);
    value["labels"] = json!(dataset.labels());
    value["tables"] = json!(dataset.len());
    emit(&value, out)
}

fn cmd_wilks(
    data: &Path,
    level: f64,
    resolution: usize,
    out: Option<PathBuf>,
    svg: Option<PathBuf>,
) -> Result<()> {
    let dataset = parse_dataset(data, Binding::SharedWeights)?;
    let mle = fit_mle(&dataset)?;
    let interval = wilks_interval(&dataset, level)?;
    if let Some(path) = svg {
        let EvaluatedGrid::Scalar(grid) = wallenius::evaluate_grid(&dataset, resolution)? else {
            unreachable!("K = 2 yields a scalar grid");
        };
        let doc = render_likelihood_1d(&grid, Some(&mle), Some(&interval), &dataset.labels()[0])?;
        write_svg(&path, &doc)?;
    }
    emit(
        &json!({
            "level": interval.level,
            "lower": interval.lower,
            "upper": interval.upper,
            "at_boundary": [interval.at_boundary.0, interval.at_boundary.1],
            "mle": mle_json(&mle),
            "labels": dataset.labels(),
        }),
        out,
    )
}

fn region_json(regions: &[ConfidenceRegion]) -> Value {
    json!(regions
        .iter()
        .map(|r| {
            json!({
                "level": r.level,
                "grid_resolution": r.grid_resolution,
                "contour": r.contour,
            })
        })
        .collect::<Vec<_>>())
}

fn cmd_region(
    data: &Path,
    levels: &[f64],
    resolution: usize,
    calibration: CalibrationArg,
    out: Option<PathBuf>,
    svg: Option<PathBuf>,
) -> Result<()> {
    let dataset = parse_dataset(data, Binding::SharedWeights)?;
    let mle = fit_mle(&dataset)?;
    let regions = likelihood_region_calibrated(&dataset, levels, resolution, calibration.into())?;
    if let Some(path) = svg {
        let w = mle.w_hat.components();
        let points = vec![LabeledPoint::circle("w_hat", [w[0], w[1], w[2]])];
        let doc = render_ternary(&regions, &points, dataset.labels())?;
        write_svg(&path, &doc)?;
    }
    emit(
        &json!({
            "calibration": match calibration {
                CalibrationArg::ChiSquare => "chi_square",
                CalibrationArg::Relative => "relative_likelihood",
            },
            "regions": region_json(&regions),
            "mle": mle_json(&mle),
            "labels": dataset.labels(),
        }),
        out,
    )
}

fn boot_json(b: &wallenius::BootstrapDistribution) -> Value {
    json!({
        "kind": match b.kind {
            wallenius::BootstrapKind::Ideal => "ideal",
            wallenius::BootstrapKind::Parametric => "parametric",
        },
        "se": b.se,
        "mean": b.mean(),
        "B": b.b,
        "n_nonconverged": b.n_nonconverged,
        "replicates": b.replicates.iter().map(|r| json!({
            "w_star": weights_json(&r.w_star),
            "mass": r.mass,
            "converged": r.converged,
            "at_boundary": r.at_boundary,
        })).collect::<Vec<_>>(),
    })
}

fn cmd_boot(
    data: &Path,
    kind: Option<BootKind>,
    b: usize,
    seed: u64,
    out: Option<PathBuf>,
) -> Result<()> {
    let dataset = parse_dataset(data, Binding::SharedWeights)?;
    let mle = fit_mle(&dataset)?;
    let kind = kind.unwrap_or(if dataset.len() == 1 {
        BootKind::Ideal
    } else {
        BootKind::Parametric
    });
    let boot = match kind {
        BootKind::Ideal => {
            if dataset.len() != 1 {
                return Err(Error::Validation(
                    "the ideal bootstrap needs a single-table design; \
                     use --kind parametric"
                        .into(),
                ));
            }
            let table = &dataset.tables()[0];
            ideal_bootstrap(&table.urn, &mle.w_hat, table.outcome.n())?
        }
        BootKind::Parametric => parametric_bootstrap(&dataset, &mle.w_hat, b, seed)?,
    };
    let mut value = boot_json(&boot);
    value["mle"] = mle_json(&mle);
    value["labels"] = json!(dataset.labels());
    value["seed"] = json!(seed);
    emit(&value, out)
}

struct SwmArgs {
    data: Option<PathBuf>,
    iters: usize,
    burnin: Option<usize>,
    w0: Option<Vec<f64>>,
    step: f64,
    alpha: f64,
    adapt: bool,
    k: Option<usize>,
    seed: u64,
    chain: PathBuf,
    out: Option<PathBuf>,
    svg: Option<PathBuf>,
    level: f64,
}

/// A dataset carrying no information: the posterior is the prior.
fn prior_only_dataset(k: usize) -> Result<Dataset> {
    let urn = UrnSpec::with_default_labels(vec![1; k])?;
    let table = Table::new("prior", urn, DrawOutcome::new(vec![0; k]))?;
    Dataset::new(vec![table], Binding::SharedWeights)
}

fn swm_summary(chain: &Chain, level: f64, chain_path: &Path) -> Result<Value> {
    let diag = chain_diagnostics(chain);
    let ci = credible_intervals(chain, level)?;
    Ok(json!({
        "iterations": chain.config.iterations,
        "burn_in": chain.config.burn_in,
        "step_scale": chain.config.step_scale,
        "prior_concentration": chain.config.prior_concentration,
        "seed": chain.config.seed,
        "w0": weights_json(&chain.config.w0),
        "accept_rate": chain.accept_rate,
        "posterior_mean": weights_json(&ci.posterior_mean),
        "credible": {
            "level": ci.level,
            "lower": ci.lower,
            "upper": ci.upper,
        },
        "diagnostics": {
            "lag1_autocorr": diag.lag1_autocorr,
            "ess": diag.ess,
            "degenerate": diag.degenerate,
        },
        "warnings": chain.warnings,
        "chain_file": chain_path.display().to_string(),
    }))
}

fn cmd_swm(args: SwmArgs) -> Result<()> {
    let dataset = match &args.data {
        Some(path) => parse_dataset(path, Binding::SharedWeights)?,
        None => {
            let k = match (&args.w0, args.k) {
                (Some(w0), k) => {
                    if let Some(k) = k {
                        if k != w0.len() {
                            return Err(Error::Validation(format!(
                                "--K {k} does not match the {} components in --w0",
                                w0.len()
                            )));
                        }
                    }
                    w0.len()
                }
                (None, Some(k)) => k,
                (None, None) => {
                    return Err(Error::Validation(
                        "a prior-only run (no --data) needs --w0 or --K".into(),
                    ))
                }
            };
            prior_only_dataset(k)?
        }
    };
    let w0 = match args.w0 {
        Some(w) => WeightVector::new(w)?,
        None => WeightVector::uniform(dataset.k())?,
    };
    let config = SwmConfig {
        iterations: args.iters,
        burn_in: args.burnin.unwrap_or(args.iters / 10),
        step_scale: args.step,
        seed: args.seed,
        w0,
        prior_concentration: args.alpha,
        adapt_step: args.adapt,
    };
    let chain = run_swm(&dataset, &config)?;
    write_chain_csv(&chain, &args.chain)?;
    if let Some(path) = &args.svg {
        let series: Vec<Vec<f64>> = (0..chain.k()).map(|c| chain.component(c)).collect();
        let doc = render_trace_panel(&series, dataset.labels())?;
        write_svg(path, &doc)?;
    }
    let summary = swm_summary(&chain, args.level, &args.chain)?;
    emit(&summary, args.out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_report(
    data: &Path,
    out_dir: &Path,
    binding: BindingArg,
    seed: u64,
    iters: usize,
    b: usize,
    resolution: usize,
    level: f64,
) -> Result<()> {
    fs::create_dir_all(out_dir)?;
    let dataset = parse_dataset(data, binding.into())?;
    let mut report = json!({
        "data": data.display().to_string(),
        "labels": dataset.labels(),
        "tables": dataset.len(),
        "seed": seed,
    });

    match binding {
        BindingArg::Shared => {
            let mle = fit_mle(&dataset)?;
            report["mle"] = mle_json(&mle);

            match dataset.k() {
                2 => {
                    let interval = wilks_interval(&dataset, level)?;
                    let EvaluatedGrid::Scalar(grid) =
                        wallenius::evaluate_grid(&dataset, resolution)?
                    else {
                        unreachable!("K = 2 yields a scalar grid");
                    };
                    let fig = out_dir.join("likelihood.svg");
                    write_svg(
                        &fig,
                        &render_likelihood_1d(
                            &grid,
                            Some(&mle),
                            Some(&interval),
                            &dataset.labels()[0],
                        )?,
                    )?;
                    report["wilks"] = json!({
                        "level": interval.level,
                        "lower": interval.lower,
                        "upper": interval.upper,
                        "at_boundary": [interval.at_boundary.0, interval.at_boundary.1],
                        "figure": fig.display().to_string(),
                    });
                }
                3 => {
                    let levels = [0.95, 0.5, 0.05];
                    let regions = likelihood_region_calibrated(
                        &dataset,
                        &levels,
                        resolution.max(50),
                        wallenius::RegionCalibration::ChiSquare,
                    )?;
                    let w = mle.w_hat.components();
                    let fig = out_dir.join("regions.svg");
                    write_svg(
                        &fig,
                        &render_ternary(
                            &regions,
                            &[LabeledPoint::circle("w_hat", [w[0], w[1], w[2]])],
                            dataset.labels(),
                        )?,
                    )?;
                    report["regions"] = region_json(&regions);
                    report["regions_figure"] = json!(fig.display().to_string());
                }
                _ => {}
            }

            let boot = if dataset.len() == 1 {
                let table = &dataset.tables()[0];
                ideal_bootstrap(&table.urn, &mle.w_hat, table.outcome.n())?
            } else {
                parametric_bootstrap(&dataset, &mle.w_hat, b, wallenius::mix64(seed, 1))?
            };
            report["bootstrap"] = boot_json(&boot);

            let config = SwmConfig {
                step_scale: 0.15,
                ..SwmConfig::new(iters, WeightVector::uniform(dataset.k())?, wallenius::mix64(seed, 2))
            };
            let chain = run_swm(&dataset, &config)?;
            let chain_path = out_dir.join("chain.csv");
            write_chain_csv(&chain, &chain_path)?;
            let series: Vec<Vec<f64>> = (0..chain.k()).map(|c| chain.component(c)).collect();
            let fig = out_dir.join("trace.svg");
            write_svg(&fig, &render_trace_panel(&series, dataset.labels())?)?;
            report["swm"] = swm_summary(&chain, level, &chain_path)?;
            report["trace_figure"] = json!(fig.display().to_string());
        }
        BindingArg::PerUnit => {
            let mut units = Vec::new();
            let mut unit_reports = Vec::new();
            for (idx, table) in dataset.tables().iter().enumerate() {
                let single = dataset.single(idx);
                let config = SwmConfig::new(
                    iters,
                    WeightVector::uniform(dataset.k())?,
                    wallenius::mix64(seed, idx as u64),
                );
                let chain = run_swm(&single, &config)?;
                let ci = credible_intervals(&chain, level)?;
                unit_reports.push(json!({
                    "table_id": table.id,
                    "posterior_mean": weights_json(&ci.posterior_mean),
                    "lower": ci.lower,
                    "upper": ci.upper,
                    "accept_rate": chain.accept_rate,
                }));
                units.push(UnitSummary { label: table.id.clone(), interval: ci });
            }
            let fig = out_dir.join("errorbars.svg");
            write_svg(&fig, &render_errorbars(&units)?)?;
            report["units"] = json!(unit_reports);
            report["errorbars_figure"] = json!(fig.display().to_string());
            report["level"] = json!(level);
        }
    }

    let path = out_dir.join("report.json");
    fs::write(&path, canonical_json(&report))?;
    println!("{}", path.display());
    Ok(())
}
