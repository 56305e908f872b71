//! Stacked trace panels, one per weight component.
//!
//! Long chains are thinned by fixed stride before plotting: with
//! `n > 10000` points the stride is `ceil((n - 1) / 9998)`, indices
//! `0, s, 2s, ...` are kept and the last point is appended when the stride
//! misses it, so the first and last samples always plot exactly and no
//! panel exceeds 10000 points.

use wallenius::{Error, Result};

use super::{document, polyline, text, theme};

const MAX_POINTS: usize = 10_000;

/// Indices kept by the thinning rule.
pub fn thin_indices(n: usize) -> Vec<usize> {
    if n <= MAX_POINTS {
        return (0..n).collect();
    }
    let stride = (n - 1).div_ceil(MAX_POINTS - 2);
    let mut idx: Vec<usize> = (0..n).step_by(stride).collect();
    if *idx.last().unwrap() != n - 1 {
        idx.push(n - 1);
    }
    idx
}

/// One stacked sub-panel per series, labeled, in input order.
pub fn render_trace_panel(series: &[Vec<f64>], labels: &[String]) -> Result<String> {
    if series.is_empty() {
        return Err(Error::Domain("no series to plot".into()));
    }
    if series.len() != labels.len() {
        return Err(Error::Domain(format!(
            "{} series but {} labels",
            series.len(),
            labels.len()
        )));
    }
    let n = series[0].len();
    if n == 0 || series.iter().any(|s| s.len() != n) {
        return Err(Error::Domain("series must be nonempty and equally long".into()));
    }

    let panels = series.len() as f64;
    let panel_gap = 14.0;
    let panel_h = (theme::HEIGHT - 2.0 * theme::MARGIN - panel_gap * (panels - 1.0)) / panels;
    let plot_w = theme::WIDTH - 2.0 * theme::MARGIN;
    let idx = thin_indices(n);

    let mut body = String::new();
    for (p, (s, label)) in series.iter().zip(labels).enumerate() {
        let top = theme::MARGIN + p as f64 * (panel_h + panel_gap);
        let (mut lo, mut hi) = s
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        if !(hi > lo) {
            lo -= 0.5;
            hi += 0.5;
        }
        let x_px = |i: usize| {
            theme::MARGIN
                + if n == 1 { 0.0 } else { i as f64 / (n - 1) as f64 } * plot_w
        };
        let y_px = |v: f64| top + (1.0 - (v - lo) / (hi - lo)) * panel_h;

        body += &format!(
            "<rect class=\"panel\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" \
             fill=\"none\" stroke=\"{}\"/>\n",
            super::px(theme::MARGIN),
            super::px(top),
            super::px(plot_w),
            super::px(panel_h),
            theme::AXIS_COLOR
        );
        let pts: Vec<(f64, f64)> = idx.iter().map(|&i| (x_px(i), y_px(s[i]))).collect();
        body += &polyline(&pts, theme::palette(p), &format!("trace-{label}"));
        body += &text(theme::MARGIN - 8.0, top + 0.6 * panel_h, "end", label, "panel-label");
        body += &text(
            theme::MARGIN + plot_w + 4.0,
            top + 12.0,
            "start",
            &format!("{hi:.3}"),
            "tick",
        );
        body += &text(
            theme::MARGIN + plot_w + 4.0,
            top + panel_h,
            "start",
            &format!("{lo:.3}"),
            "tick",
        );
    }
    // shared iteration axis
    let y = theme::HEIGHT - theme::MARGIN + 18.0;
    body += &text(theme::MARGIN, y, "middle", "1", "tick");
    body += &text(theme::MARGIN + plot_w, y, "middle", &format!("{n}"), "tick");
    body += &text(
        theme::MARGIN + 0.5 * plot_w,
        y,
        "middle",
        "iteration",
        "axis-label",
    );
    Ok(document(theme::WIDTH, theme::HEIGHT, &body))
}
