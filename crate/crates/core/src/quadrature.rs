//! Panelwise Gauss-Legendre rules with panels graded toward a point.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pairs: Vec<(f64, f64)>,
}

impl GaussRule {
    pub fn new(order: usize) -> Self {
        let order = NonZeroUsize::new(order.max(2)).expect("order is positive");
        let rule = GaussLegendre::new(order);
        Self {
            pairs: rule.as_node_weight_pairs().to_vec(),
        }
    }

    pub fn order(&self) -> usize {
        self.pairs.len()
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn on(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.pairs.iter().map(move |&(x, w)| (mid + half * x, half * w))
    }

    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.on(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

pub type Panel = (f64, f64);

/// Panels on `[lo, hi]` with breakpoints at `1 - 2^{-j}`, `j <= max_level`.
/// When `hi` is 1 the last panel is `[1 - 2^{-max_level}, 1]`.
pub fn geometric_panels(lo: f64, hi: f64, max_level: u32) -> Vec<Panel> {
    let mut cuts = vec![lo];
    for j in 0..=max_level {
        let x = 1.0 - (-(j as f64)).exp2();
        if x > lo && x < hi {
            cuts.push(x);
        }
    }
    cuts.push(hi);
    cuts.windows(2).filter(|w| w[1] > w[0]).map(|w| (w[0], w[1])).collect()
}

/// Panels on `[lo, hi]` whose widths halve toward `focus`; the panels
/// touching `focus` have width in `(min_width, 2 min_width]`.
pub fn graded_panels(lo: f64, hi: f64, focus: f64, min_width: f64) -> Vec<Panel> {
    let focus = focus.clamp(lo, hi);
    let mut cuts = vec![focus];
    for (end, sign) in [(hi, 1.0), (lo, -1.0)] {
        let mut w = (end - focus).abs();
        while w > min_width {
            cuts.push(focus + sign * w);
            w *= 0.5;
        }
        cuts.push(end);
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() <= f64::EPSILON * b.abs().max(1.0));
    cuts.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Splits every panel into `2^level` equal pieces.
pub fn refine(panels: &[Panel], level: u32) -> Vec<Panel> {
    let parts = 1usize << level;
    panels
        .iter()
        .flat_map(|&(a, b)| {
            let h = (b - a) / parts as f64;
            (0..parts).map(move |i| {
                (
                    a + i as f64 * h,
                    if i + 1 == parts { b } else { a + (i + 1) as f64 * h },
                )
            })
        })
        .collect()
}
