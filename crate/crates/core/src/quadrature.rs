//! Gauss–Legendre rules, composite panels and a semi-infinite radial map.

use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    /// `n`-point Gauss–Legendre rule on `[-1, 1]`.
    pub fn gauss_legendre(n: usize) -> Self {
        assert!(n > 0, "rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Affine copy on `[a, b]`.
    pub fn on(&self, a: f64, b: f64) -> Self {
        let (h, c) = (0.5 * (b - a), 0.5 * (b + a));
        Self {
            nodes: self.nodes.iter().map(|x| c + h * x).collect(),
            weights: self.weights.iter().map(|w| w * h).collect(),
        }
    }

    /// Gauss–Legendre with `n` nodes on each panel between consecutive breaks.
    pub fn composite(breaks: &[f64], n: usize) -> Self {
        let base = Self::gauss_legendre(n);
        let mut out = Self {
            nodes: Vec::new(),
            weights: Vec::new(),
        };
        for w in breaks.windows(2) {
            let r = base.on(w[0], w[1]);
            out.nodes.extend(r.nodes);
            out.weights.extend(r.weights);
        }
        out
    }

    /// Rule on `(0, ∞)` from `r = s·u/(1-u)` with `u` on the given panels of `(0, 1)`.
    pub fn semi_infinite(scale: f64, u_breaks: &[f64], n: usize) -> Self {
        let u = Self::composite(u_breaks, n);
        let mut out = Self {
            nodes: Vec::with_capacity(u.len()),
            weights: Vec::with_capacity(u.len()),
        };
        for (x, w) in u.nodes.iter().zip(&u.weights) {
            let d = 1.0 - x;
            out.nodes.push(scale * x / d);
            out.weights.push(w * scale / (d * d));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, w)| w * f(x)).sum()
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}
