//! Likelihood-contour confidence regions on the 2-simplex.
//!
//! For a three-category dataset the likelihood-ratio statistic
//! `LR(w) = 2 * (l(w_hat) - l(w))` is evaluated on a barycentric grid and
//! the region at each confidence level is the sublevel set of the
//! chi-square(2) quantile. Contours are extracted by marching over the grid
//! triangles with linear interpolation on the edges; where a region is
//! clipped by the grid border, the border path itself joins the contour so
//! every contour is a closed polyline.

use std::collections::HashMap;

use serde::Serialize;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::grid::{evaluate_grid, EvaluatedGrid, TernaryGrid};
use crate::mle::fit_mle;
use crate::wilks::chi_square_quantile;

/// How a "level" maps to a likelihood-ratio threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionCalibration {
    /// Confidence sets: threshold at the chi-square(2) quantile of the
    /// level (the default).
    ChiSquare,
    /// Relative-likelihood contours: the region where
    /// `L(w) / L(w_hat) >= level`, i.e. threshold `-2 ln(level)`.
    RelativeLikelihood,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfidenceRegion {
    pub level: f64,
    /// Closed contour (first point repeated last) in barycentric
    /// coordinates, counter-clockwise in the standard ternary projection.
    pub contour: Vec<[f64; 3]>,
    pub grid_resolution: usize,
}

/// Chi-square-calibrated regions at the given levels.
pub fn likelihood_region(
    dataset: &Dataset,
    levels: &[f64],
    grid_resolution: usize,
) -> Result<Vec<ConfidenceRegion>> {
    likelihood_region_calibrated(dataset, levels, grid_resolution, RegionCalibration::ChiSquare)
}

pub fn likelihood_region_calibrated(
    dataset: &Dataset,
    levels: &[f64],
    grid_resolution: usize,
    calibration: RegionCalibration,
) -> Result<Vec<ConfidenceRegion>> {
    if dataset.k() != 3 {
        return Err(Error::DimensionMismatch(format!(
            "confidence regions need 3 categories, got {}",
            dataset.k()
        )));
    }
    if grid_resolution < 50 {
        return Err(Error::Domain(format!(
            "grid resolution {grid_resolution} below minimum 50"
        )));
    }
    for &level in levels {
        if !(0.0 < level && level < 1.0) {
            return Err(Error::Domain(format!("level {level} outside (0,1)")));
        }
    }

    let mle = fit_mle(dataset)?;
    let EvaluatedGrid::Ternary(grid) = evaluate_grid(dataset, grid_resolution)? else {
        unreachable!("K = 3 yields a ternary grid");
    };

    let mut out = Vec::with_capacity(levels.len());
    for &level in levels {
        let threshold = match calibration {
            RegionCalibration::ChiSquare => chi_square_quantile(2.0, level),
            RegionCalibration::RelativeLikelihood => -2.0 * level.ln(),
        };
        let field: Vec<f64> = grid
            .loglik
            .iter()
            .map(|&l| 2.0 * (mle.loglik_max - l) - threshold)
            .collect();
        let contour = extract_contour(&grid, &field);
        out.push(ConfidenceRegion { level, contour, grid_resolution });
    }
    Ok(out)
}

type Key = (i64, i64);

fn key(p: &[f64; 3]) -> Key {
    // 1e-10 quantum: merges the two floating evaluations of a shared edge
    // crossing without collapsing distinct contour vertices
    ((p[0] * 1e10).round() as i64, (p[1] * 1e10).round() as i64)
}

/// Boundary of the sublevel set `{field < 0}` as a closed polyline.
fn extract_contour(grid: &TernaryGrid, field: &[f64]) -> Vec<[f64; 3]> {
    let l = grid.resolution - 1;
    let mut segments: Vec<([f64; 3], [f64; 3])> = Vec::new();

    let pt = |i: usize, j: usize| grid.points[grid.index(i, j)];
    let val = |i: usize, j: usize| field[grid.index(i, j)];

    let mut emit = |corners: [(usize, usize); 3]| {
        let mut crossings: Vec<[f64; 3]> = Vec::with_capacity(2);
        for e in 0..3 {
            let (a, b) = (corners[e], corners[(e + 1) % 3]);
            let (ga, gb) = (val(a.0, a.1), val(b.0, b.1));
            if (ga < 0.0) != (gb < 0.0) {
                crossings.push(lerp(&pt(a.0, a.1), ga, &pt(b.0, b.1), gb));
            }
        }
        if crossings.len() == 2 {
            segments.push((crossings[0], crossings[1]));
        }
    };

    for i in 0..l {
        for j in 0..(l - i) {
            emit([(i, j), (i, j + 1), (i + 1, j)]);
            if i + j + 2 <= l {
                emit([(i, j + 1), (i + 1, j), (i + 1, j + 1)]);
            }
        }
    }

    // close regions clipped by the grid border: walk each side's lattice
    // edges and keep the parts inside the region
    let sides: [Vec<(usize, usize)>; 3] = [
        (0..=l).map(|i| (i, 0)).collect(),
        (0..=l).map(|i| (l - i, i)).collect(),
        (0..=l).map(|j| (0, l - j)).collect(),
    ];
    for side in &sides {
        for pair in side.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let (ga, gb) = (val(a.0, a.1), val(b.0, b.1));
            let (pa, pb) = (pt(a.0, a.1), pt(b.0, b.1));
            match (ga < 0.0, gb < 0.0) {
                (true, true) => segments.push((pa, pb)),
                (true, false) => segments.push((pa, lerp(&pa, ga, &pb, gb))),
                (false, true) => segments.push((lerp(&pa, ga, &pb, gb), pb)),
                (false, false) => {}
            }
        }
    }

    if segments.is_empty() {
        return fallback_cell(grid, field);
    }
    let loops = stitch(&segments);
    let best = loops
        .into_iter()
        .max_by(|a, b| {
            polygon_area(a)
                .abs()
                .partial_cmp(&polygon_area(b).abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap_or_default();
    canonicalize(best)
}

fn lerp(pa: &[f64; 3], ga: f64, pb: &[f64; 3], gb: f64) -> [f64; 3] {
    let t = ga / (ga - gb);
    [
        pa[0] + t * (pb[0] - pa[0]),
        pa[1] + t * (pb[1] - pa[1]),
        pa[2] + t * (pb[2] - pa[2]),
    ]
}

/// Chains segments into loops by matching quantized endpoints.
fn stitch(segments: &[([f64; 3], [f64; 3])]) -> Vec<Vec<[f64; 3]>> {
    let mut by_key: HashMap<Key, Vec<usize>> = HashMap::new();
    for (idx, (a, b)) in segments.iter().enumerate() {
        by_key.entry(key(a)).or_default().push(idx);
        by_key.entry(key(b)).or_default().push(idx);
    }

    let mut used = vec![false; segments.len()];
    let mut loops = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let (a, b) = segments[start];
        let mut path = vec![a, b];
        let start_key = key(&a);
        let mut cursor = key(&b);
        while cursor != start_key {
            let Some(cands) = by_key.get(&cursor) else { break };
            let Some(&next) = cands.iter().find(|&&s| !used[s]) else { break };
            used[next] = true;
            let (na, nb) = segments[next];
            let forward = key(&na) == cursor;
            let point = if forward { nb } else { na };
            path.push(point);
            cursor = key(&point);
        }
        loops.push(path);
    }
    loops
}

/// Orients counter-clockwise, rotates the start to the smallest vertex and
/// repeats the first point at the end.
fn canonicalize(mut path: Vec<[f64; 3]>) -> Vec<[f64; 3]> {
    if path.is_empty() {
        return path;
    }
    if key(&path[0]) == key(path.last().unwrap()) {
        path.pop();
    }
    if path.len() < 3 {
        return Vec::new();
    }
    if polygon_area(&path) < 0.0 {
        path.reverse();
    }
    let first = path
        .iter()
        .enumerate()
        .min_by_key(|(_, p)| key(p))
        .map(|(i, _)| i)
        .unwrap_or(0);
    path.rotate_left(first);
    path.push(path[0]);
    path
}

/// Degenerate fallback when the region is smaller than a grid cell: a
/// small triangle around the grid argmax.
fn fallback_cell(grid: &TernaryGrid, field: &[f64]) -> Vec<[f64; 3]> {
    let center = grid.points[field
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
        .map(|(i, _)| i)
        .unwrap_or(0)];
    let d = 0.25 / (grid.resolution - 1) as f64;
    let mut tri = vec![
        [center[0] + d, center[1] - 0.5 * d, center[2] - 0.5 * d],
        [center[0] - 0.5 * d, center[1] + d, center[2] - 0.5 * d],
        [center[0] - 0.5 * d, center[1] - 0.5 * d, center[2] + d],
    ];
    if tri.iter().any(|p| p.iter().any(|&v| v < 0.0)) {
        tri = vec![center, center, center];
    }
    canonicalize(tri)
}

/// Signed area of a barycentric polygon in the standard ternary projection
/// (positive for counter-clockwise).
pub fn polygon_area(path: &[[f64; 3]]) -> f64 {
    let n = path.len();
    if n < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    for i in 0..n {
        let (xa, ya) = project(&path[i]);
        let (xb, yb) = project(&path[(i + 1) % n]);
        acc += xa * yb - xb * ya;
    }
    0.5 * acc
}

/// Ray-casting point-in-polygon test in the ternary projection.
pub fn polygon_contains(path: &[[f64; 3]], point: &[f64; 3]) -> bool {
    let (px, py) = project(point);
    let mut inside = false;
    let n = path.len();
    for i in 0..n {
        let (xa, ya) = project(&path[i]);
        let (xb, yb) = project(&path[(i + 1) % n]);
        if (ya > py) != (yb > py) && px < xa + (py - ya) / (yb - ya) * (xb - xa) {
            inside = !inside;
        }
    }
    inside
}

fn project(b: &[f64; 3]) -> (f64, f64) {
    (b[1] + 0.5 * b[2], 0.866_025_403_784_438_6 * b[2])
}
