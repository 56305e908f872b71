//! Derivative-free minimization: Nelder-Mead with a finite-difference
//! Newton polish. Problem dimensions here are tiny (K - 1 <= a handful),
//! so robustness is preferred over speed throughout.

#[derive(Debug, Clone)]
pub struct NmResult {
    pub x: Vec<f64>,
    pub fx: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2) stopping when the simplex function spread drops below
/// `ftol` or its diameter below 1e-12.
pub fn nelder_mead<F: Fn(&[f64]) -> f64>(
    f: &F,
    x0: &[f64],
    scale: f64,
    ftol: f64,
    max_iters: usize,
) -> NmResult {
    let d = x0.len();
    let mut simplex: Vec<(f64, Vec<f64>)> = Vec::with_capacity(d + 1);
    simplex.push((f(x0), x0.to_vec()));
    for i in 0..d {
        let mut v = x0.to_vec();
        v[i] += scale;
        simplex.push((f(&v), v));
    }

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iters {
        iterations += 1;
        simplex.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
        let spread = simplex[d].0 - simplex[0].0;
        let diameter = simplex[1..]
            .iter()
            .map(|(_, v)| dist(v, &simplex[0].1))
            .fold(0.0f64, f64::max);
        if spread.abs() <= ftol || diameter <= 1e-12 {
            converged = true;
            break;
        }

        let centroid: Vec<f64> = (0..d)
            .map(|j| simplex[..d].iter().map(|(_, v)| v[j]).sum::<f64>() / d as f64)
            .collect();
        let worst = simplex[d].clone();
        let reflected = affine(&centroid, &worst.1, -1.0);
        let fr = f(&reflected);

        if fr < simplex[0].0 {
            let expanded = affine(&centroid, &worst.1, -2.0);
            let fe = f(&expanded);
            simplex[d] = if fe < fr { (fe, expanded) } else { (fr, reflected) };
        } else if fr < simplex[d - 1].0 {
            simplex[d] = (fr, reflected);
        } else {
            let contracted = if fr < worst.0 {
                affine(&centroid, &worst.1, -0.5)
            } else {
                affine(&centroid, &worst.1, 0.5)
            };
            let fc = f(&contracted);
            if fc < worst.0.min(fr) {
                simplex[d] = (fc, contracted);
            } else {
                let best = simplex[0].1.clone();
                for entry in simplex.iter_mut().skip(1) {
                    for (vj, bj) in entry.1.iter_mut().zip(&best) {
                        *vj = bj + 0.5 * (*vj - bj);
                    }
                    entry.0 = f(&entry.1);
                }
            }
        }
    }

    simplex.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    NmResult {
        x: simplex[0].1.clone(),
        fx: simplex[0].0,
        iterations,
        converged,
    }
}

/// `centroid + t * (point - centroid)`.
fn affine(centroid: &[f64], point: &[f64], t: f64) -> Vec<f64> {
    centroid
        .iter()
        .zip(point)
        .map(|(&c, &p)| c + t * (p - c))
        .collect()
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Central finite-difference gradient.
pub fn fd_gradient<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64], h: f64) -> Vec<f64> {
    let mut g = vec![0.0; x.len()];
    let mut xp = x.to_vec();
    for i in 0..x.len() {
        xp[i] = x[i] + h;
        let fp = f(&xp);
        xp[i] = x[i] - h;
        let fm = f(&xp);
        xp[i] = x[i];
        g[i] = (fp - fm) / (2.0 * h);
    }
    g
}

fn fd_hessian<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64], h: f64) -> Vec<Vec<f64>> {
    let d = x.len();
    let f0 = f(x);
    let mut hess = vec![vec![0.0; d]; d];
    let mut xp = x.to_vec();
    for i in 0..d {
        xp[i] = x[i] + h;
        let fpp = f(&xp);
        xp[i] = x[i] - h;
        let fmm = f(&xp);
        xp[i] = x[i];
        hess[i][i] = (fpp - 2.0 * f0 + fmm) / (h * h);
        for j in 0..i {
            let mut q = x.to_vec();
            q[i] += h;
            q[j] += h;
            let fa = f(&q);
            q[j] -= 2.0 * h;
            let fb = f(&q);
            q[i] -= 2.0 * h;
            let fd = f(&q);
            q[j] += 2.0 * h;
            let fc = f(&q);
            let v = (fa - fb - fc + fd) / (4.0 * h * h);
            hess[i][j] = v;
            hess[j][i] = v;
        }
    }
    hess
}

/// Gaussian elimination with partial pivoting; `None` on (near) singularity.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let (pivot, max) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())?;
        if max < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= factor * a[col][c];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let mut acc = b[r];
        for c in r + 1..n {
            acc -= a[r][c] * x[c];
        }
        x[r] = acc / a[r][r];
    }
    Some(x)
}

#[derive(Debug, Clone)]
pub struct PolishResult {
    pub x: Vec<f64>,
    pub fx: f64,
    pub grad_norm: f64,
    pub iterations: usize,
}

/// Newton refinement from an already near-optimal point. Steps that do not
/// decrease the objective are backtracked; gives up after a few rounds.
pub fn newton_polish<F: Fn(&[f64]) -> f64>(
    f: &F,
    x0: &[f64],
    h: f64,
    gtol: f64,
    max_iters: usize,
) -> PolishResult {
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    let mut iterations = 0;
    let mut grad = fd_gradient(f, &x, h);
    while iterations < max_iters && norm(&grad) > gtol {
        iterations += 1;
        let hess = fd_hessian(f, &x, h.max(1e-5));
        let neg_grad: Vec<f64> = grad.iter().map(|g| -g).collect();
        let Some(step) = solve(hess, neg_grad) else { break };
        let mut t = 1.0;
        let mut improved = false;
        for _ in 0..8 {
            let trial: Vec<f64> = x.iter().zip(&step).map(|(xi, si)| xi + t * si).collect();
            let ft = f(&trial);
            if ft <= fx {
                x = trial;
                fx = ft;
                improved = true;
                break;
            }
            t *= 0.25;
        }
        if !improved {
            break;
        }
        grad = fd_gradient(f, &x, h);
    }
    PolishResult { grad_norm: norm(&grad), x, fx, iterations }
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
