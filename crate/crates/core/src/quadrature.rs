//! Quadrature rules: Gauss–Legendre (single and composite) and the periodic
//! trapezoidal rule.

use std::f64::consts::PI;

/// Nodes and weights of a quadrature rule on a fixed interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Applies the rule to `f`.
    pub fn integrate<T, F>(&self, mut f: F) -> T
    where
        T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
        F: FnMut(f64) -> T,
    {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::default(), |acc, (&x, &w)| acc + f(x) * w)
    }
}

/// Gauss–Legendre rule with `n` nodes on `[-1, 1]`.
///
/// Roots are found by Newton iteration on the three-term recurrence starting
/// from the Tricomi approximation; accurate to round-off for `n` up to a few
/// hundred.
pub fn gauss_legendre(n: usize) -> Rule {
    assert!(n > 0, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Rule { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Panel order used by [`composite_gauss_legendre`].
pub const PANEL_ORDER: usize = 32;

/// Composite Gauss–Legendre rule on `[lo, hi]` with at least `nodes` nodes.
///
/// Up to [`PANEL_ORDER`] nodes a single rule is used; beyond that the
/// interval is split into equal panels of order [`PANEL_ORDER`].
pub fn composite_gauss_legendre(lo: f64, hi: f64, nodes: usize) -> Rule {
    let nodes = nodes.max(1);
    let (order, panels) = if nodes <= PANEL_ORDER {
        (nodes, 1)
    } else {
        (PANEL_ORDER, nodes.div_ceil(PANEL_ORDER))
    };
    let base = gauss_legendre(order);
    let width = (hi - lo) / panels as f64;
    let mut rule = Rule {
        nodes: Vec::with_capacity(order * panels),
        weights: Vec::with_capacity(order * panels),
    };
    for p in 0..panels {
        let a = lo + p as f64 * width;
        let mid = a + 0.5 * width;
        for (x, w) in base.nodes.iter().zip(&base.weights) {
            rule.nodes.push(mid + 0.5 * width * x);
            rule.weights.push(0.5 * width * w);
        }
    }
    rule
}

/// Trapezoidal rule for a periodic integrand on `[lo, lo + period)`.
pub fn periodic_trapezoid(lo: f64, period: f64, nodes: usize) -> Rule {
    let nodes = nodes.max(1);
    let h = period / nodes as f64;
    Rule {
        nodes: (0..nodes).map(|j| lo + j as f64 * h).collect(),
        weights: vec![h; nodes],
    }
}
