//! Structural checks of the SVG renderers: well-formed XML, the contract
//! marker colors, and the documented axis transforms.

use approx::assert_abs_diff_eq;

use wallenius::grid::ScalarGrid;
use wallenius::{
    fit_mle, simulate_dataset, wilks_interval, ConfidenceRegion, CredibleInterval, EvaluatedGrid,
    UrnSpec, WeightVector,
};
use wallenius_cli::render::{
    render_errorbars, render_likelihood_1d, render_ternary, render_trace_panel, theme,
    LabeledPoint, UnitSummary,
};

fn parse(svg: &str) -> roxmltree::Document<'_> {
    roxmltree::Document::parse(svg).expect("well-formed XML")
}

fn assert_self_contained(svg: &str) {
    assert!(!svg.contains("href"), "external reference in SVG");
    assert!(!svg.contains("url("), "external reference in SVG");
}

fn lines_with_class<'a>(
    doc: &'a roxmltree::Document<'a>,
    class: &str,
) -> Vec<roxmltree::Node<'a, 'a>> {
    doc.descendants()
        .filter(|n| n.has_tag_name("line") && n.attribute("class") == Some(class))
        .collect()
}

fn two_category_fixture() -> (ScalarGrid, wallenius::MleResult, wallenius::WilksInterval) {
    let urn = UrnSpec::with_default_labels(vec![12, 12]).unwrap();
    let w = WeightVector::new(vec![0.65, 0.35]).unwrap();
    let data = simulate_dataset(&urn, &w, 9, 40, 11).unwrap();
    let mle = fit_mle(&data).unwrap();
    let interval = wilks_interval(&data, 0.95).unwrap();
    let EvaluatedGrid::Scalar(grid) = wallenius::evaluate_grid(&data, 101).unwrap() else {
        panic!("expected scalar grid");
    };
    (grid, mle, interval)
}

#[test]
fn likelihood_curve_has_one_red_and_two_blue_markers() {
    let (grid, mle, interval) = two_category_fixture();
    let svg = render_likelihood_1d(&grid, Some(&mle), Some(&interval), "c1").unwrap();
    assert_self_contained(&svg);
    let doc = parse(&svg);

    let red = lines_with_class(&doc, "mle-marker");
    let blue = lines_with_class(&doc, "interval-marker");
    assert_eq!(red.len(), 1);
    assert_eq!(blue.len(), 2);
    assert_eq!(red[0].attribute("stroke"), Some("red"));
    assert!(blue.iter().all(|n| n.attribute("stroke") == Some("blue")));
}

#[test]
fn likelihood_markers_sit_on_the_documented_transform() {
    let (grid, mle, interval) = two_category_fixture();
    let svg = render_likelihood_1d(&grid, Some(&mle), Some(&interval), "c1").unwrap();
    let doc = parse(&svg);

    let plot_w = theme::WIDTH - 2.0 * theme::MARGIN;
    let (w_min, w_max) = (grid.points[0], *grid.points.last().unwrap());
    let x_of = |w: f64| theme::MARGIN + (w - w_min) / (w_max - w_min) * plot_w;

    let red = lines_with_class(&doc, "mle-marker");
    let got: f64 = red[0].attribute("x1").unwrap().parse().unwrap();
    assert!((got - x_of(mle.w_hat.components()[0])).abs() <= 0.5);

    let mut expected = [x_of(interval.lower), x_of(interval.upper)];
    expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut blues: Vec<f64> = lines_with_class(&doc, "interval-marker")
        .iter()
        .map(|n| n.attribute("x1").unwrap().parse().unwrap())
        .collect();
    blues.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for (g, e) in blues.iter().zip(expected) {
        assert!((g - e).abs() <= 0.5, "marker at {g}, expected {e}");
    }
}

#[test]
fn flat_likelihood_renders_curve_and_warning_only() {
    let grid = ScalarGrid {
        points: (0..50).map(|i| 0.01 + 0.98 * i as f64 / 49.0).collect(),
        loglik: vec![0.0; 50],
    };
    let svg = render_likelihood_1d(&grid, None, None, "w").unwrap();
    let doc = parse(&svg);
    assert!(lines_with_class(&doc, "mle-marker").is_empty());
    assert!(lines_with_class(&doc, "interval-marker").is_empty());
    let warning = doc
        .descendants()
        .find(|n| n.has_tag_name("text") && n.attribute("class") == Some("warning"))
        .expect("warning annotation");
    assert!(warning.text().unwrap().contains("flat"));
    assert!(svg.contains("likelihood-curve"));
}

#[test]
fn empty_grid_is_a_domain_error() {
    let grid = ScalarGrid { points: vec![], loglik: vec![] };
    assert!(render_likelihood_1d(&grid, None, None, "w").is_err());
}

#[test]
fn ternary_corners_anchor_the_affine_map() {
    use wallenius_cli::render::ternary::{corners, project};
    let (v1, v2, v3) = corners();
    assert_eq!(project(&[1.0, 0.0, 0.0]), (v1[0], v1[1]));
    assert_eq!(project(&[0.0, 1.0, 0.0]), (v2[0], v2[1]));
    assert_eq!(project(&[0.0, 0.0, 1.0]), (v3[0], v3[1]));

    let third = 1.0 / 3.0;
    let (cx, cy) = project(&[third, third, third]);
    assert_abs_diff_eq!(cx, (v1[0] + v2[0] + v3[0]) / 3.0, epsilon = 1e-9);
    assert_abs_diff_eq!(cy, (v1[1] + v2[1] + v3[1]) / 3.0, epsilon = 1e-9);
}

#[test]
fn ternary_renders_labeled_reference_points() {
    // estimates for two separate units plotted on one simplex
    let points = vec![
        LabeledPoint::circle("unit 20", [0.305, 0.303, 0.392]),
        LabeledPoint::circle("unit 108", [0.095, 0.071, 0.834]),
    ];
    let svg = render_ternary(&[], &points, &[]).unwrap();
    assert_self_contained(&svg);
    let doc = parse(&svg);
    let markers: Vec<_> = doc
        .descendants()
        .filter(|n| n.has_tag_name("circle") && n.attribute("class") == Some("point-marker"))
        .collect();
    assert_eq!(markers.len(), 2);
    let cx0: f64 = markers[0].attribute("cx").unwrap().parse().unwrap();
    let cx1: f64 = markers[1].attribute("cx").unwrap().parse().unwrap();
    assert!((cx0 - cx1).abs() > 1.0, "markers should be distinct");
    let labels: Vec<&str> = doc
        .descendants()
        .filter(|n| n.attribute("class") == Some("point-label"))
        .map(|n| n.text().unwrap())
        .collect();
    assert_eq!(labels, vec!["unit 20", "unit 108"]);
}

#[test]
fn ternary_rejects_off_simplex_points() {
    let bad = vec![LabeledPoint::circle("bad", [0.5, 0.4, 0.2])];
    assert!(render_ternary(&[], &bad, &[]).is_err());
    let neg = ConfidenceRegion {
        level: 0.5,
        contour: vec![[1.1, -0.1, 0.0]; 4],
        grid_resolution: 50,
    };
    assert!(render_ternary(&[neg], &[], &[]).is_err());
}

#[test]
fn ternary_draws_start_point_as_red_cross() {
    let points = vec![LabeledPoint::start("w0", [0.6, 0.3, 0.1])];
    let svg = render_ternary(&[], &points, &[]).unwrap();
    let doc = parse(&svg);
    let cross: Vec<_> = lines_with_class(&doc, "point-marker");
    assert_eq!(cross.len(), 2, "a cross is two strokes");
    assert!(cross.iter().all(|n| n.attribute("stroke") == Some("red")));
}

#[test]
fn trace_panels_follow_input_order() {
    let labels: Vec<String> = ["C", "M", "S", "E", "P"].iter().map(|s| s.to_string()).collect();
    let series: Vec<Vec<f64>> = (0..5)
        .map(|k| (0..400).map(|i| 0.2 + 0.1 * ((i + k * 37) as f64 * 0.1).sin()).collect())
        .collect();
    let svg = render_trace_panel(&series, &labels).unwrap();
    assert_self_contained(&svg);
    let doc = parse(&svg);
    let panel_labels: Vec<&str> = doc
        .descendants()
        .filter(|n| n.attribute("class") == Some("panel-label"))
        .map(|n| n.text().unwrap())
        .collect();
    assert_eq!(panel_labels, vec!["C", "M", "S", "E", "P"]);
    let panels = doc
        .descendants()
        .filter(|n| n.has_tag_name("rect") && n.attribute("class") == Some("panel"))
        .count();
    assert_eq!(panels, 5);
}

#[test]
fn constant_trace_is_a_horizontal_midline() {
    let svg = render_trace_panel(&[vec![0.4; 100]], &["w".to_string()]).unwrap();
    let doc = parse(&svg);
    let trace = doc
        .descendants()
        .find(|n| n.has_tag_name("polyline") && n.attribute("class") == Some("trace-w"))
        .unwrap();
    let pts = trace.attribute("points").unwrap();
    let ys: Vec<f64> = pts
        .split_whitespace()
        .map(|p| p.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(ys.windows(2).all(|w| w[0] == w[1]), "line should be horizontal");
    // degenerate range pads to [v - 0.5, v + 0.5], placing the line mid-panel
    let panel = doc
        .descendants()
        .find(|n| n.has_tag_name("rect") && n.attribute("class") == Some("panel"))
        .unwrap();
    let top: f64 = panel.attribute("y").unwrap().parse().unwrap();
    let height: f64 = panel.attribute("height").unwrap().parse().unwrap();
    assert_abs_diff_eq!(ys[0], top + 0.5 * height, epsilon = 0.51);
}

#[test]
fn trace_rejects_mismatched_series() {
    let svg = render_trace_panel(
        &[vec![0.1; 10], vec![0.2; 11]],
        &["a".to_string(), "b".to_string()],
    );
    assert!(svg.is_err());
    assert!(render_trace_panel(&[], &[]).is_err());
}

#[test]
fn thinning_keeps_ends_and_caps_points() {
    use wallenius_cli::render::thin_indices;
    for n in [1usize, 2, 9_999, 10_000, 10_001, 123_456, 300_000] {
        let idx = thin_indices(n);
        assert_eq!(idx[0], 0);
        assert_eq!(*idx.last().unwrap(), n - 1);
        assert!(idx.len() <= 10_000, "{n} thinned to {}", idx.len());
        assert!(idx.windows(2).all(|w| w[0] < w[1]));
    }
}

fn interval(mean: Vec<f64>, lower: Vec<f64>, upper: Vec<f64>) -> CredibleInterval {
    CredibleInterval {
        level: 0.95,
        lower,
        upper,
        posterior_mean: WeightVector::new(mean).unwrap(),
    }
}

#[test]
fn errorbars_group_units_in_input_order() {
    let units: Vec<UnitSummary> = (0..8)
        .map(|i| {
            let a = 0.3 + 0.04 * i as f64;
            UnitSummary {
                label: format!("fly{}", i + 1),
                interval: interval(
                    vec![a, 1.0 - a],
                    vec![a - 0.05, 0.95 - a],
                    vec![a + 0.05, 1.05 - a],
                ),
            }
        })
        .collect();
    let svg = render_errorbars(&units).unwrap();
    assert_self_contained(&svg);
    let doc = parse(&svg);
    let groups: Vec<&str> = doc
        .descendants()
        .filter(|n| n.attribute("class") == Some("group-label"))
        .map(|n| n.text().unwrap())
        .collect();
    let expected: Vec<String> = (1..=8).map(|i| format!("fly{i}")).collect();
    assert_eq!(groups, expected);
}

#[test]
fn degenerate_interval_renders_a_tick() {
    let units = vec![UnitSummary {
        label: "only".into(),
        interval: interval(vec![0.4, 0.6], vec![0.4, 0.6], vec![0.4, 0.6]),
    }];
    let svg = render_errorbars(&units).unwrap();
    let doc = parse(&svg);
    let ticks = lines_with_class(&doc, "interval-tick");
    assert_eq!(ticks.len(), 2);
    assert!(lines_with_class(&doc, "interval-bar").is_empty());
}

#[test]
fn errorbar_endpoints_follow_the_axis_transform() {
    let units = vec![UnitSummary {
        label: "u".into(),
        interval: interval(vec![0.5, 0.5], vec![0.31, 0.24], vec![0.77, 0.69]),
    }];
    let svg = render_errorbars(&units).unwrap();
    let doc = parse(&svg);
    let plot_h = theme::HEIGHT - 2.0 * theme::MARGIN;
    let y_of = |v: f64| theme::MARGIN + (1.0 - v) * plot_h;
    let bars = lines_with_class(&doc, "interval-bar");
    assert_eq!(bars.len(), 2);
    let y1: f64 = bars[0].attribute("y1").unwrap().parse().unwrap();
    let y2: f64 = bars[0].attribute("y2").unwrap().parse().unwrap();
    assert!((y1 - y_of(0.31)).abs() <= 0.5);
    assert!((y2 - y_of(0.77)).abs() <= 0.5);
}

#[test]
fn inverted_interval_is_rejected() {
    let units = vec![UnitSummary {
        label: "bad".into(),
        interval: interval(vec![0.5, 0.5], vec![0.6, 0.2], vec![0.4, 0.8]),
    }];
    assert!(render_errorbars(&units).is_err());
}

#[test]
fn identical_inputs_render_identical_bytes() {
    let (grid, mle, iv) = two_category_fixture();
    let a = render_likelihood_1d(&grid, Some(&mle), Some(&iv), "c1").unwrap();
    let b = render_likelihood_1d(&grid, Some(&mle), Some(&iv), "c1").unwrap();
    assert_eq!(a, b);
}
