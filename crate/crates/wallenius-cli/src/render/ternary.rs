//! Ternary plots: confidence-region contours and labeled points on the
//! 2-simplex.
//!
//! Barycentric coordinates map affinely onto an equilateral triangle with
//! side `S`: `p(w) = w1 * V1 + w2 * V2 + w3 * V3` where `V1` is the
//! bottom-left, `V2` the bottom-right and `V3` the top corner.

use wallenius::{ConfidenceRegion, Error, Result};

use super::{document, line, polyline, px, text, theme};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Marker {
    Circle,
    Cross,
}

#[derive(Debug, Clone)]
pub struct LabeledPoint {
    pub label: String,
    pub w: [f64; 3],
    pub marker: Marker,
    pub color: String,
}

impl LabeledPoint {
    pub fn circle(label: impl Into<String>, w: [f64; 3]) -> Self {
        Self { label: label.into(), w, marker: Marker::Circle, color: "black".into() }
    }

    /// The conventional starting-point marker: a red cross.
    pub fn start(label: impl Into<String>, w: [f64; 3]) -> Self {
        Self {
            label: label.into(),
            w,
            marker: Marker::Cross,
            color: theme::START_COLOR.into(),
        }
    }
}

/// Triangle corners in page coordinates: (V1, V2, V3).
pub fn corners() -> ([f64; 2], [f64; 2], [f64; 2]) {
    let side = theme::WIDTH - 2.0 * theme::MARGIN;
    let height = side * 0.866_025_403_784_438_6;
    let base_y = theme::MARGIN + height;
    (
        [theme::MARGIN, base_y],
        [theme::MARGIN + side, base_y],
        [theme::MARGIN + 0.5 * side, theme::MARGIN],
    )
}

/// The documented affine map from the simplex to the page.
pub fn project(w: &[f64; 3]) -> (f64, f64) {
    let (v1, v2, v3) = corners();
    (
        w[0] * v1[0] + w[1] * v2[0] + w[2] * v3[0],
        w[0] * v1[1] + w[1] * v2[1] + w[2] * v3[1],
    )
}

fn on_simplex(w: &[f64; 3]) -> bool {
    w.iter().all(|&v| (-1e-9..=1.0 + 1e-9).contains(&v))
        && (w.iter().sum::<f64>() - 1.0).abs() <= 1e-9
}

/// Renders nested region contours (outermost first) and labeled points.
/// `corner_labels` annotates the triangle corners when three are given.
pub fn render_ternary(
    regions: &[ConfidenceRegion],
    points: &[LabeledPoint],
    corner_labels: &[String],
) -> Result<String> {
    for r in regions {
        for p in &r.contour {
            if !on_simplex(p) {
                return Err(Error::Domain(format!(
                    "contour point {p:?} is off the simplex"
                )));
            }
        }
    }
    for p in points {
        if !on_simplex(&p.w) {
            return Err(Error::Domain(format!(
                "point {:?} = {:?} is off the simplex",
                p.label, p.w
            )));
        }
    }

    let (v1, v2, v3) = corners();
    let mut body = String::new();
    body += &polyline(
        &[
            (v1[0], v1[1]),
            (v2[0], v2[1]),
            (v3[0], v3[1]),
            (v1[0], v1[1]),
        ],
        theme::AXIS_COLOR,
        "simplex-outline",
    );
    if corner_labels.len() == 3 {
        body += &text(v1[0] - 6.0, v1[1] + 16.0, "middle", &corner_labels[0], "corner-label");
        body += &text(v2[0] + 6.0, v2[1] + 16.0, "middle", &corner_labels[1], "corner-label");
        body += &text(v3[0], v3[1] - 8.0, "middle", &corner_labels[2], "corner-label");
    }

    // outermost contours first so nested fills/strokes stay visible
    let mut order: Vec<usize> = (0..regions.len()).collect();
    order.sort_by(|&a, &b| {
        let area_a = wallenius::region::polygon_area(&regions[a].contour).abs();
        let area_b = wallenius::region::polygon_area(&regions[b].contour).abs();
        area_b.partial_cmp(&area_a).unwrap_or(std::cmp::Ordering::Equal)
    });
    for (rank, &idx) in order.iter().enumerate() {
        let r = &regions[idx];
        let pts: Vec<(f64, f64)> = r.contour.iter().map(project).collect();
        body += &polyline(&pts, theme::palette(rank), &format!("region-{}", r.level));
        if let Some(first) = r.contour.first() {
            let (x, y) = project(first);
            body += &text(x + 4.0, y - 4.0, "start", &format!("{}", r.level), "region-label");
        }
    }

    for p in points {
        let (x, y) = project(&p.w);
        match p.marker {
            Marker::Circle => {
                body += &format!(
                    "<circle class=\"point-marker\" cx=\"{}\" cy=\"{}\" r=\"3.5\" \
                     fill=\"{}\"/>\n",
                    px(x),
                    px(y),
                    p.color
                );
            }
            Marker::Cross => {
                body += &line(x - 5.0, y - 5.0, x + 5.0, y + 5.0, &p.color, "point-marker");
                body += &line(x - 5.0, y + 5.0, x + 5.0, y - 5.0, &p.color, "point-marker");
            }
        }
        body += &text(x + 7.0, y - 7.0, "start", &p.label, "point-label");
    }

    Ok(document(theme::WIDTH, theme::HEIGHT, &body))
}
