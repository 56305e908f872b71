//! Log-likelihood evaluation on fixed simplex grids.
//!
//! Two shapes are supported: a uniform 1-D grid over the scalar coordinate
//! of a two-category model, and a uniform barycentric triangulation of the
//! 2-simplex for three categories. All grid points are kept strictly
//! interior by shrinking the simplex towards its centroid by the grid
//! floor, so the likelihood stays finite at every point.

use serde::Serialize;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::likelihood::log_likelihood_raw;
use crate::urn::SIMPLEX_FLOOR;

#[derive(Debug, Clone, Serialize)]
pub struct ScalarGrid {
    /// First-component coordinates, equally spaced in
    /// `[floor, 1 - floor]`.
    pub points: Vec<f64>,
    pub loglik: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TernaryGrid {
    pub resolution: usize,
    /// Barycentric points in row-major lattice order: row `i` holds the
    /// points with first coordinate `i / (resolution - 1)`.
    pub points: Vec<[f64; 3]>,
    pub loglik: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum EvaluatedGrid {
    Scalar(ScalarGrid),
    Ternary(TernaryGrid),
}

impl TernaryGrid {
    /// Lattice side: points per edge.
    pub fn side(&self) -> usize {
        self.resolution
    }

    /// Flat index of lattice point `(i, j)` (row `i`, position `j`,
    /// `i + j <= resolution - 1`).
    pub fn index(&self, i: usize, j: usize) -> usize {
        let l = self.resolution - 1;
        debug_assert!(i + j <= l);
        // row i starts after rows 0..i of lengths (l+1), l, ...
        i * (l + 1) - i * (i.saturating_sub(1)) / 2 + j
    }

    /// Index of the grid point with the largest log-likelihood.
    pub fn argmax(&self) -> usize {
        self.loglik
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _)| i)
            .unwrap_or(0)
    }
}

/// Evaluates the joint log-likelihood on the grid of the given resolution.
/// Two categories get `resolution` scalar points; three categories get the
/// triangular lattice with `resolution * (resolution + 1) / 2` points.
pub fn evaluate_grid(dataset: &Dataset, resolution: usize) -> Result<EvaluatedGrid> {
    dataset.require_shared_binding()?;
    if resolution < 2 {
        return Err(Error::Domain(format!(
            "grid resolution {resolution} below minimum 2"
        )));
    }
    match dataset.k() {
        2 => {
            let lo = SIMPLEX_FLOOR;
            let hi = 1.0 - SIMPLEX_FLOOR;
            let step = (hi - lo) / (resolution - 1) as f64;
            let points: Vec<f64> = (0..resolution).map(|i| lo + i as f64 * step).collect();
            let loglik = points
                .iter()
                .map(|&w1| log_likelihood_raw(dataset, &[w1, 1.0 - w1]).value)
                .collect();
            Ok(EvaluatedGrid::Scalar(ScalarGrid { points, loglik }))
        }
        3 => {
            let l = resolution - 1;
            let mut points = Vec::with_capacity(resolution * (resolution + 1) / 2);
            for i in 0..=l {
                for j in 0..=(l - i) {
                    let k = l - i - j;
                    let b = [
                        i as f64 / l as f64,
                        j as f64 / l as f64,
                        k as f64 / l as f64,
                    ];
                    points.push(interior(b));
                }
            }
            let loglik = points
                .iter()
                .map(|p| log_likelihood_raw(dataset, p).value)
                .collect();
            Ok(EvaluatedGrid::Ternary(TernaryGrid {
                resolution,
                points,
                loglik,
            }))
        }
        k => Err(Error::DimensionMismatch(format!(
            "grids are defined for 2 or 3 categories, got {k}"
        ))),
    }
}

/// Shrinks a barycentric point towards the centroid so each component is at
/// least the grid floor.
fn interior(b: [f64; 3]) -> [f64; 3] {
    let e = SIMPLEX_FLOOR;
    [
        (1.0 - 3.0 * e) * b[0] + e,
        (1.0 - 3.0 * e) * b[1] + e,
        (1.0 - 3.0 * e) * b[2] + e,
    ]
}
