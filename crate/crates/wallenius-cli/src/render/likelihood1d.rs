//! Scalar likelihood curve with the MLE and Wilks interval limits marked.
//!
//! The axis transform is linear:
//! `x_px(w) = MARGIN + (w - w_min) / (w_max - w_min) * plot_width` and
//! `y_px(L) = MARGIN + (1 - L) * plot_height` for the likelihood
//! normalized to a maximum of one.

use wallenius::grid::ScalarGrid;
use wallenius::{Error, MleResult, Result, WilksInterval};

use super::{document, line, polyline, px, text, theme};

pub fn render_likelihood_1d(
    grid: &ScalarGrid,
    mle: Option<&MleResult>,
    interval: Option<&WilksInterval>,
    x_label: &str,
) -> Result<String> {
    if grid.points.is_empty() {
        return Err(Error::Domain("empty likelihood grid".into()));
    }
    let (w_min, w_max) = (grid.points[0], *grid.points.last().unwrap());
    if !(w_max > w_min) {
        return Err(Error::Domain("grid must span an interval".into()));
    }
    let plot_w = theme::WIDTH - 2.0 * theme::MARGIN;
    let plot_h = theme::HEIGHT - 2.0 * theme::MARGIN;
    let x_px = |w: f64| theme::MARGIN + (w - w_min) / (w_max - w_min) * plot_w;
    let y_px = |l: f64| theme::MARGIN + (1.0 - l) * plot_h;

    let max_ll = grid.loglik.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min_ll = grid.loglik.iter().copied().fold(f64::INFINITY, f64::min);
    let flat = !(max_ll - min_ll > 1e-12) || !max_ll.is_finite();

    let mut body = String::new();
    // axes
    body += &line(
        theme::MARGIN,
        theme::MARGIN + plot_h,
        theme::MARGIN + plot_w,
        theme::MARGIN + plot_h,
        theme::AXIS_COLOR,
        "axis",
    );
    body += &line(
        theme::MARGIN,
        theme::MARGIN,
        theme::MARGIN,
        theme::MARGIN + plot_h,
        theme::AXIS_COLOR,
        "axis",
    );
    for frac in [0.0, 0.5, 1.0] {
        let w = w_min + frac * (w_max - w_min);
        body += &text(
            x_px(w),
            theme::MARGIN + plot_h + 18.0,
            "middle",
            &format!("{w:.3}"),
            "tick",
        );
    }
    body += &text(
        theme::MARGIN + 0.5 * plot_w,
        theme::HEIGHT - 14.0,
        "middle",
        x_label,
        "axis-label",
    );
    body += &text(theme::MARGIN - 30.0, theme::MARGIN + 6.0, "middle", "L", "axis-label");

    let curve: Vec<(f64, f64)> = grid
        .points
        .iter()
        .zip(&grid.loglik)
        .map(|(&w, &ll)| {
            let l = if flat { 0.5 } else { (ll - max_ll).exp() };
            (x_px(w), y_px(l))
        })
        .collect();
    body += &polyline(&curve, theme::CURVE_COLOR, "likelihood-curve");

    if flat {
        body += &text(
            theme::MARGIN + 0.5 * plot_w,
            theme::MARGIN + 0.25 * plot_h,
            "middle",
            "warning: flat likelihood, no maximum to mark",
            "warning",
        );
        return Ok(document(theme::WIDTH, theme::HEIGHT, &body));
    }

    if let Some(mle) = mle {
        let w = mle.w_hat.components()[0];
        body += &marker(x_px(w), theme::MARGIN, plot_h, theme::MLE_COLOR, "mle-marker");
    }
    if let Some(iv) = interval {
        for w in [iv.lower, iv.upper] {
            body += &marker(
                x_px(w),
                theme::MARGIN,
                plot_h,
                theme::INTERVAL_COLOR,
                "interval-marker",
            );
        }
    }
    Ok(document(theme::WIDTH, theme::HEIGHT, &body))
}

fn marker(x: f64, top: f64, plot_h: f64, color: &str, class: &str) -> String {
    format!(
        "<line class=\"{class}\" x1=\"{x}\" y1=\"{y1}\" x2=\"{x}\" y2=\"{y2}\" \
         stroke=\"{color}\" stroke-dasharray=\"4 3\"/>\n",
        x = px(x),
        y1 = px(top),
        y2 = px(top + plot_h),
    )
}
