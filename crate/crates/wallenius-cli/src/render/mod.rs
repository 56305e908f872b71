//! Deterministic SVG rendering for the four figure styles.
//!
//! All output is self-contained SVG 1.1 with no external references.
//! Coordinates are formatted at three decimals, so identical inputs always
//! produce byte-identical documents. Only the red MLE / blue interval
//! marker colors are contractual; everything else comes from the default
//! theme below.

pub mod errorbars;
pub mod likelihood1d;
pub mod ternary;
pub mod trace;

pub use errorbars::{render_errorbars, UnitSummary};
pub use likelihood1d::render_likelihood_1d;
pub use ternary::{render_ternary, LabeledPoint, Marker};
pub use trace::{render_trace_panel, thin_indices};

/// Fixed styling shared by every figure.
pub mod theme {
    pub const WIDTH: f64 = 640.0;
    pub const HEIGHT: f64 = 480.0;
    pub const MARGIN: f64 = 56.0;
    /// Contractual marker colors.
    pub const MLE_COLOR: &str = "red";
    pub const INTERVAL_COLOR: &str = "blue";
    /// Starting-point marker (a red cross).
    pub const START_COLOR: &str = "red";
    pub const CURVE_COLOR: &str = "#1f77b4";
    pub const AXIS_COLOR: &str = "#333333";
    pub const FONT: &str = "font-family=\"Helvetica, Arial, sans-serif\" font-size=\"12\"";
    /// Per-series palette for contours, traces and error bars.
    pub const PALETTE: [&str; 6] =
        ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

    pub fn palette(i: usize) -> &'static str {
        PALETTE[i % PALETTE.len()]
    }
}

/// Coordinate formatting: three decimals, negative zero normalized.
pub(crate) fn px(v: f64) -> String {
    let v = if v.abs() < 5e-4 { 0.0 } else { v };
    format!("{v:.3}")
}

/// Document skeleton around a body of elements.
pub(crate) fn document(width: f64, height: f64, body: &str) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" \
         viewBox=\"0 0 {w} {h}\">\n{body}</svg>\n",
        w = px(width),
        h = px(height),
    )
}

pub(crate) fn polyline(points: &[(f64, f64)], stroke: &str, class: &str) -> String {
    let coords: Vec<String> = points
        .iter()
        .map(|(x, y)| format!("{},{}", px(*x), px(*y)))
        .collect();
    format!(
        "<polyline class=\"{class}\" fill=\"none\" stroke=\"{stroke}\" points=\"{}\"/>\n",
        coords.join(" ")
    )
}

pub(crate) fn line(x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str, class: &str) -> String {
    format!(
        "<line class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{stroke}\"/>\n",
        px(x1),
        px(y1),
        px(x2),
        px(y2)
    )
}

pub(crate) fn text(x: f64, y: f64, anchor: &str, content: &str, class: &str) -> String {
    format!(
        "<text class=\"{class}\" x=\"{}\" y=\"{}\" text-anchor=\"{anchor}\" {}>{}</text>\n",
        px(x),
        px(y),
        theme::FONT,
        escape(content)
    )
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
