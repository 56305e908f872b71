//! Per-unit posterior summaries: one point plus vertical bar per weight
//! component, grouped by unit, in input order. The y axis is the weight
//! scale `[0, 1]`.

use wallenius::{CredibleInterval, Error, Result};

use super::{document, line, px, text, theme};

#[derive(Debug, Clone)]
pub struct UnitSummary {
    pub label: String,
    pub interval: CredibleInterval,
}

pub fn render_errorbars(units: &[UnitSummary]) -> Result<String> {
    if units.is_empty() {
        return Err(Error::Domain("no units to plot".into()));
    }
    let k = units[0].interval.posterior_mean.len();
    for u in units {
        if u.interval.posterior_mean.len() != k {
            return Err(Error::Domain("units disagree on the number of components".into()));
        }
        for (lo, hi) in u.interval.lower.iter().zip(&u.interval.upper) {
            if lo > hi {
                return Err(Error::Domain(format!(
                    "unit {:?} has an interval with lower > upper",
                    u.label
                )));
            }
        }
    }

    let plot_w = theme::WIDTH - 2.0 * theme::MARGIN;
    let plot_h = theme::HEIGHT - 2.0 * theme::MARGIN;
    let group_w = plot_w / units.len() as f64;
    let bar_w = group_w / (k as f64 + 1.0);
    let y_px = |v: f64| theme::MARGIN + (1.0 - v) * plot_h;

    let mut body = String::new();
    body += &line(
        theme::MARGIN,
        y_px(0.0),
        theme::MARGIN + plot_w,
        y_px(0.0),
        theme::AXIS_COLOR,
        "axis",
    );
    body += &line(
        theme::MARGIN,
        y_px(0.0),
        theme::MARGIN,
        y_px(1.0),
        theme::AXIS_COLOR,
        "axis",
    );
    for v in [0.0, 0.5, 1.0] {
        body += &text(theme::MARGIN - 8.0, y_px(v) + 4.0, "end", &format!("{v:.1}"), "tick");
    }

    for (g, unit) in units.iter().enumerate() {
        let x0 = theme::MARGIN + g as f64 * group_w + 0.5 * bar_w;
        for c in 0..k {
            let x = x0 + c as f64 * bar_w + 0.5 * bar_w;
            let color = theme::palette(c);
            let (lo, hi) = (unit.interval.lower[c], unit.interval.upper[c]);
            if hi > lo {
                body += &line(x, y_px(lo), x, y_px(hi), color, "interval-bar");
            } else {
                // degenerate interval: a tick instead of a bar
                body += &line(x - 3.0, y_px(lo), x + 3.0, y_px(lo), color, "interval-tick");
            }
            let mean = unit.interval.posterior_mean.components()[c];
            body += &format!(
                "<circle class=\"mean-point\" cx=\"{}\" cy=\"{}\" r=\"2.8\" fill=\"{}\"/>\n",
                px(x),
                px(y_px(mean)),
                color
            );
        }
        body += &text(
            x0 + 0.5 * (k as f64 * bar_w),
            y_px(0.0) + 18.0,
            "middle",
            &unit.label,
            "group-label",
        );
    }
    Ok(document(theme::WIDTH, theme::HEIGHT, &body))
}
