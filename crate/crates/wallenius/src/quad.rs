//! Gauss-Legendre quadrature with recursive interval splitting.

/// A fixed Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes nodes and weights of the `order`-point rule by Newton
    /// iteration on the Legendre recurrence.
    pub fn new(order: usize) -> Self {
        assert!(order >= 2);
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let step = p / d;
                x -= step;
                if step.abs() <= 1e-15 {
                    break;
                }
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        Self { nodes, weights }
    }

    /// Integrates `f` over `[a, b]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: &F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

/// Value and derivative of the Legendre polynomial `P_n` at `x`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    /// False when some subinterval hit the depth limit before meeting its
    /// local tolerance.
    pub converged: bool,
}

/// Adaptive integrator: each interval is accepted when bisecting it changes
/// the estimate by less than the local absolute tolerance, else both halves
/// recurse with half the tolerance, up to `max_depth` levels.
#[derive(Debug, Clone)]
pub struct AdaptiveQuad {
    rule: GaussLegendre,
    pub max_depth: u32,
}

impl AdaptiveQuad {
    pub fn new(order: usize, max_depth: u32) -> Self {
        Self { rule: GaussLegendre::new(order), max_depth }
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, tol: f64, f: &F) -> QuadResult {
        let whole = self.rule.integrate(a, b, f);
        self.refine(a, b, whole, tol, 0, f)
    }

    /// Integrates over `[points[0], points[last]]` splitting at the interior
    /// breakpoints first. Each panel receives an equal share of `tol`.
    pub fn integrate_segmented<F: Fn(f64) -> f64>(
        &self,
        points: &[f64],
        tol: f64,
        f: &F,
    ) -> QuadResult {
        debug_assert!(points.len() >= 2);
        debug_assert!(points.windows(2).all(|p| p[0] < p[1]));
        let share = tol / (points.len() - 1) as f64;
        let mut value = 0.0;
        let mut converged = true;
        for p in points.windows(2) {
            let r = self.integrate(p[0], p[1], share, f);
            value += r.value;
            converged &= r.converged;
        }
        QuadResult { value, converged }
    }

    /// Segmented integration at a tolerance *relative* to the integral
    /// itself: a single fixed-rule sweep over the panels sizes the result,
    /// then each panel refines against its share of `rel_tol * |estimate|`.
    /// The sweep doubles as the top-level accept test, so well-behaved
    /// panels cost one rule application plus one bisection.
    pub fn integrate_relative<F: Fn(f64) -> f64>(
        &self,
        points: &[f64],
        rel_tol: f64,
        f: &F,
    ) -> QuadResult {
        debug_assert!(points.len() >= 2);
        debug_assert!(points.windows(2).all(|p| p[0] < p[1]));
        let wholes: Vec<f64> = points
            .windows(2)
            .map(|p| self.rule.integrate(p[0], p[1], f))
            .collect();
        let estimate: f64 = wholes.iter().sum();
        if estimate == 0.0 {
            return QuadResult { value: 0.0, converged: true };
        }
        let share =
            (estimate.abs() * rel_tol).max(f64::MIN_POSITIVE) / (points.len() - 1) as f64;
        let mut value = 0.0;
        let mut converged = true;
        for (p, &whole) in points.windows(2).zip(&wholes) {
            let r = self.refine(p[0], p[1], whole, share, 0, f);
            value += r.value;
            converged &= r.converged;
        }
        QuadResult { value, converged }
    }

    fn refine<F: Fn(f64) -> f64>(
        &self,
        a: f64,
        b: f64,
        whole: f64,
        tol: f64,
        depth: u32,
        f: &F,
    ) -> QuadResult {
        let mid = 0.5 * (a + b);
        let left = self.rule.integrate(a, mid, f);
        let right = self.rule.integrate(mid, b, f);
        let split = left + right;
        if (split - whole).abs() <= tol || mid <= a || mid >= b {
            return QuadResult { value: split, converged: true };
        }
        if depth >= self.max_depth {
            return QuadResult { value: split, converged: false };
        }
        let l = self.refine(a, mid, left, 0.5 * tol, depth + 1, f);
        let r = self.refine(mid, b, right, 0.5 * tol, depth + 1, f);
        QuadResult { value: l.value + r.value, converged: l.converged && r.converged }
    }
}
