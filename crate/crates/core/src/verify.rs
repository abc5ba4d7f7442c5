//! Identity suite over seeded random inputs plus an optional configured pair.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::norms::{hardy_norm, Kernel, NormParams};
use crate::operators::{nth_derivative_identity, t_gn_binomial, t_gn_direct, t_gn_factored};
use crate::series::{PowerSeries, C64};

pub const TRIPLE_TOL: f64 = 1e-12;
pub const SEMIGROUP_TOL: f64 = 1e-13;
pub const UNIT_NORM_TOL: f64 = 1e-8;

/// Check names in reporting order.
pub const CHECKS: [&str; 6] = [
    "triple-agreement",
    "derivative-identity",
    "derivative-recursion",
    "vanishing-jet",
    "vk-semigroup",
    "ka-unit-norm",
];

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_degree: usize,
    pub max_order: usize,
    /// Configured `(f, g, n)` checked in addition to the random pairs.
    pub configured: Option<(PowerSeries, PowerSeries, usize)>,
    /// Hardy exponent for the unit-norm check.
    pub p: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            trials: 100,
            seed: 0,
            max_degree: 64,
            max_order: 6,
            configured: None,
            p: 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

/// Random series with complex Gaussian coefficients of unit variance.
pub fn random_series(rng: &mut impl Rng, degree: usize) -> PowerSeries {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let coeffs = (0..=degree)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            C64::new(s * re, s * im)
        })
        .collect();
    PowerSeries::from_coeffs(coeffs).expect("finite coefficients")
}

/// Coefficient deviation scaled by `max(1, |reference|_inf)`; infinite when
/// anything is non-finite.
fn deviation(a: &PowerSeries, b: &PowerSeries) -> f64 {
    let finite = |s: &PowerSeries| s.coeffs().iter().all(|c| c.re.is_finite() && c.im.is_finite());
    if !finite(a) || !finite(b) {
        return f64::INFINITY;
    }
    let d = a.max_abs_diff(b);
    if d.is_nan() {
        return f64::INFINITY;
    }
    d / a.max_abs().max(1.0)
}

struct Tracker(Vec<CheckResult>);

impl Tracker {
    fn record(&mut self, name: &'static str, tolerance: f64, dev: f64) {
        let dev = if dev.is_nan() { f64::INFINITY } else { dev };
        match self.0.iter_mut().find(|c| c.name == name) {
            Some(c) => c.max_deviation = c.max_deviation.max(dev),
            None => self.0.push(CheckResult {
                name,
                max_deviation: dev,
                tolerance,
            }),
        }
    }
}

fn check_triple(t: &mut Tracker, f: &PowerSeries, g: &PowerSeries, n: usize) -> Result<()> {
    let n_out = f.degree() + g.degree() + n;
    let direct = t_gn_direct(f, g, n, n_out)?;
    let factored = t_gn_factored(f, g, n, n_out)?;
    let binomial = t_gn_binomial(f, g, n, n_out)?;
    t.record(
        "triple-agreement",
        TRIPLE_TOL,
        deviation(&direct, &factored).max(deviation(&direct, &binomial)),
    );

    let d = nth_derivative_identity(f, g, n)?;
    let scale = f.multiply(&g.derivative(), n_out).max_abs().max(1.0);
    let dev = if scale.is_finite() { d / scale } else { f64::INFINITY };
    t.record("derivative-identity", TRIPLE_TOL, dev);

    if n >= 2 {
        let lower = t_gn_direct(f, g, n - 1, n_out - 1)?;
        t.record(
            "derivative-recursion",
            TRIPLE_TOL,
            deviation(&lower, &direct.derivative()),
        );
    }

    let jet = direct.coeffs()[..n].iter().fold(0.0f64, |m, c| m.max(c.norm()));
    t.record("vanishing-jet", 0.0, if jet.is_nan() { f64::INFINITY } else { jet });
    Ok(())
}

fn check_semigroup(t: &mut Tracker, f: &PowerSeries, j: usize, k: usize) -> Result<()> {
    let twice = f.integrate_k(j)?.integrate_k(k)?;
    let once = f.integrate_k(j + k)?;
    t.record("vk-semigroup", SEMIGROUP_TOL, deviation(&once, &twice));
    Ok(())
}

/// Runs every check and returns one result per check name, in a fixed order.
pub fn identity_suite(cfg: &VerifyConfig) -> Result<Vec<CheckResult>> {
    let mut t = Tracker(Vec::new());
    if let Some((f, g, n)) = &cfg.configured {
        check_triple(&mut t, f, g, *n)?;
        check_semigroup(&mut t, f, 1, *n)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.trials {
        let df = rng.gen_range(0..=cfg.max_degree);
        let dg = rng.gen_range(1..=cfg.max_degree);
        let n = rng.gen_range(1..=cfg.max_order.max(1));
        let f = random_series(&mut rng, df);
        let g = random_series(&mut rng, dg);
        check_triple(&mut t, &f, &g, n)?;
        let j = rng.gen_range(1..=cfg.max_order.max(1));
        check_semigroup(&mut t, &f, j, n)?;
    }

    let params = NormParams::default();
    for a in [0.5, 0.9, 0.99] {
        let k = Kernel::hardy(C64::new(a, 0.0), cfg.p)?;
        let v = hardy_norm(&k, cfg.p, &params)?.value;
        t.record("ka-unit-norm", UNIT_NORM_TOL, (v - 1.0).abs());
    }
    let mut out = t.0;
    out.sort_by_key(|c| CHECKS.iter().position(|n| *n == c.name));
    Ok(out)
}
