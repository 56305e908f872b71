//! Log-ratio coordinates for the open simplex.
//!
//! The K-component simplex is parametrized by `z_i = ln(w_i / w_K)` for
//! `i = 1..K-1`; the inverse is a softmax with the last coordinate pinned
//! at zero. Optimizers and the posterior sampler work in `z`, where the
//! domain is all of `R^(K-1)`.

/// Maps unconstrained coordinates to simplex weights (length `z.len() + 1`).
pub fn to_simplex(z: &[f64]) -> Vec<f64> {
    let m = z.iter().copied().fold(0.0f64, f64::max);
    let mut w: Vec<f64> = z.iter().map(|&zi| (zi - m).exp()).collect();
    w.push((-m).exp());
    let sum: f64 = w.iter().sum();
    for v in &mut w {
        *v /= sum;
    }
    w
}

/// Maps simplex weights to unconstrained coordinates (length `w.len() - 1`).
pub fn from_simplex(w: &[f64]) -> Vec<f64> {
    let last = w[w.len() - 1];
    w[..w.len() - 1].iter().map(|&wi| (wi / last).ln()).collect()
}
