//! Composite Gauss-Legendre quadrature with panel doubling.

use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;

/// Nodes per panel.
pub const PANEL_ORDER: usize = 20;
const MAX_PANELS: usize = 1 << 14;

fn reference_rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(NonZeroUsize::new(PANEL_ORDER).unwrap()))
        .as_node_weight_pairs()
}

/// Nodes and weights of `panels` equal Gauss-Legendre panels covering `[a, b]`.
pub fn composite_nodes(a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
    let rule = reference_rule();
    let width = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * rule.len());
    for k in 0..panels {
        let lo = a + width * k as f64;
        let half = 0.5 * width;
        let mid = lo + half;
        out.extend(rule.iter().map(|&(x, w)| (mid + half * x, half * w)));
    }
    out
}

pub fn composite<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, panels: usize) -> f64 {
    composite_nodes(a, b, panels)
        .into_iter()
        .map(|(x, w)| w * f(x))
        .sum()
}

/// Integrates `f` over `[a, b]`, doubling the panel count until successive
/// estimates differ by less than `tol`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let mut panels = 2;
    let mut previous = composite(&mut f, a, b, panels);
    loop {
        panels *= 2;
        let current = composite(&mut f, a, b, panels);
        if (current - previous).abs() < tol || panels >= MAX_PANELS {
            return current;
        }
        previous = current;
    }
}

/// Tensor-product version of [`integrate`] over `[ax, bx] x [ay, by]`.
pub fn integrate_2d<F: FnMut(f64, f64) -> f64>(
    mut f: F,
    (ax, bx): (f64, f64),
    (ay, by): (f64, f64),
    tol: f64,
) -> f64 {
    let mut estimate = |panels: usize| {
        let xs = composite_nodes(ax, bx, panels);
        let ys = composite_nodes(ay, by, panels);
        let mut sum = 0.0;
        for &(x, wx) in &xs {
            for &(y, wy) in &ys {
                sum += wx * wy * f(x, y);
            }
        }
        sum
    };
    let mut panels = 2;
    let mut previous = estimate(panels);
    loop {
        panels *= 2;
        let current = estimate(panels);
        if (current - previous).abs() < tol || panels >= 256 {
            return current;
        }
        previous = current;
    }
}
