//! Gauss-Legendre nodes and composite rules on the unit interval.

use alloc::vec::Vec;

use crate::math::{abs, sin_cos, PI};

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "rule needs at least one node");
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let (_, c) = sin_cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut x = c;
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if abs(dx) < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        nodes.push(0.5 * (1.0 - x));
        weights.push(1.0 / ((1.0 - x * x) * dp * dp));
    }
    (nodes, weights)
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
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

/// Order of the Gauss-Legendre panels used by composite rules.
pub const PANEL_ORDER: usize = 8;

/// A one-dimensional rule on `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl AxisRule {
    /// `points` nodes: a single Gauss rule below [`PANEL_ORDER`], otherwise
    /// `points / PANEL_ORDER` equal panels (rounded up).
    pub fn composite(points: usize) -> Self {
        if points < PANEL_ORDER {
            let (nodes, weights) = gauss_legendre(points.max(1));
            return AxisRule { nodes, weights };
        }
        let panels = points.div_ceil(PANEL_ORDER);
        Self::panels(panels, PANEL_ORDER)
    }

    pub fn panels(panels: usize, order: usize) -> Self {
        let (x, w) = gauss_legendre(order);
        let h = 1.0 / panels as f64;
        let mut nodes = Vec::with_capacity(panels * order);
        let mut weights = Vec::with_capacity(panels * order);
        for p in 0..panels {
            for (xi, wi) in x.iter().zip(w.iter()) {
                nodes.push((p as f64 + xi) * h);
                weights.push(wi * h);
            }
        }
        AxisRule { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}
