//! Curated worked examples with pass/fail tolerances, run by `volterra paper`.

use std::f64::consts::SQRT_2;

use crate::carleson::{ball_density_profile, box_density_profile, ray_ladder, WeightDensity};
use crate::error::Result;
use crate::essnorm::{bergman_essnorm_estimate, hardy_essnorm_estimate, EssnormConfig};
use crate::norms::{
    bergman_norm, bergman_test_fn, bp_seminorm, hardy_norm, hardy_test_fn, integral_mean, operator_norm_lower, Kernel,
    NormParams, Space,
};
use crate::operators::OperatorSpec;
use crate::profile::{fit_log_log, Verdict};
use crate::series::{PowerSeries, SymbolSpec, C64};
use crate::verify::{identity_suite, VerifyConfig};

pub const SCENARIOS: [&str; 7] = [
    "vk-norm",
    "identities",
    "test-functions",
    "kernel-scaling",
    "bmoa-remark",
    "corollary",
    "essnorm-coherence",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Human-readable table rows.
    pub lines: Vec<String>,
}

struct Builder {
    name: &'static str,
    passed: bool,
    lines: Vec<String>,
}

impl Builder {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            passed: true,
            lines: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, line: String) {
        self.passed &= ok;
        self.lines.push(format!("{} {line}", if ok { "ok  " } else { "FAIL" }));
    }

    fn note(&mut self, line: String) {
        self.lines.push(format!("     {line}"));
    }

    fn finish(self) -> ScenarioOutcome {
        ScenarioOutcome {
            name: self.name,
            passed: self.passed,
            lines: self.lines,
        }
    }
}

pub fn run(name: &str, seed: u64) -> Option<Result<ScenarioOutcome>> {
    Some(match name {
        "vk-norm" => vk_norm(seed),
        "identities" => identities(seed),
        "test-functions" => test_functions(),
        "kernel-scaling" => kernel_scaling(),
        "bmoa-remark" => bmoa_remark(),
        "corollary" => corollary(),
        "essnorm-coherence" => essnorm_coherence(),
        _ => return None,
    })
}

fn vk_norm(seed: u64) -> Result<ScenarioOutcome> {
    let mut b = Builder::new("vk-norm");
    let params = NormParams::default();
    let one = PowerSeries::constant(C64::new(1.0, 0.0));
    for p in [1.0, 2.0, 4.0] {
        let mut fact = 1.0;
        for k in 1..=5 {
            fact *= k as f64;
            let v = hardy_norm(&one.integrate_k(k)?, p, &params)?.value;
            let probe = operator_norm_lower(&OperatorSpec::integration(k)?, Space::Hardy { p }, 500, seed, &params)?;
            b.check(
                (v - 1.0 / fact).abs() <= 1e-9 && probe.lower_bound <= (1.0 + 1e-6) / fact,
                format!(
                    "p={p} k={k}: ||V^k 1|| = {v:.12}, 1/k! = {:.12}, best probe {:.12} ({})",
                    1.0 / fact,
                    probe.lower_bound,
                    probe.best
                ),
            );
        }
    }
    Ok(b.finish())
}

fn identities(seed: u64) -> Result<ScenarioOutcome> {
    let mut b = Builder::new("identities");
    let cfg = VerifyConfig {
        seed,
        ..VerifyConfig::default()
    };
    for c in identity_suite(&cfg)? {
        b.check(
            c.passed(),
            format!(
                "{}: max deviation {:.3e} (tol {:.0e})",
                c.name, c.max_deviation, c.tolerance
            ),
        );
    }
    Ok(b.finish())
}

fn test_functions() -> Result<ScenarioOutcome> {
    let mut b = Builder::new("test-functions");
    let params = NormParams::default();
    for a in [0.5, 0.9, 0.99] {
        let za = C64::new(a, 0.0);
        let v = hardy_norm(&Kernel::hardy(za, 2.0)?, 2.0, &params)?.value;
        b.check((v - 1.0).abs() <= 1e-8, format!("|a|={a}: ||k_a||_H2 = {v:.12}"));
        let trunc = integral_mean(&hardy_test_fn(za, 2.0, 512)?, 1.0, 2.0, params.samples)?;
        let defect = 1.0 - trunc * trunc;
        b.note(format!(
            "|a|={a}: N=512 truncation on |z|=1 gives 1 - M_2^2 = {defect:.3e}, expected |a|^1026 = {:.3e}",
            a.powi(1026)
        ));
        let t = bergman_test_fn(za, 2.0, 0.0, 0, &params)?;
        let n = bergman_norm(&t.normalized, 2.0, 0.0, &params)?.value;
        b.check(
            (n - 1.0).abs() <= 1e-6,
            format!("|a|={a}: ||K_a/||K_a|| ||_A2 = {n:.12}"),
        );
    }
    Ok(b.finish())
}

fn kernel_scaling() -> Result<ScenarioOutcome> {
    let mut b = Builder::new("kernel-scaling");
    let params = NormParams::default();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for u in 2..=8 {
        let a = 1.0 - (-(u as f64)).exp2();
        let k = Kernel::bergman(C64::new(a, 0.0), 0.0)?;
        let v = bergman_norm(&k, 2.0, 0.0, &params)?.value;
        b.note(format!("u={u}: ||K_a||_A2 = {v:.9e}"));
        xs.push(1.0 - a * a);
        ys.push(v);
    }
    let slope = fit_log_log(&xs, &ys).slope;
    b.check(
        (slope + 1.0).abs() <= 0.05,
        format!("fitted slope {slope:.6}, expected -1 within 5%"),
    );
    Ok(b.finish())
}

fn bmoa_remark() -> Result<ScenarioOutcome> {
    let mut b = Builder::new("bmoa-remark");
    let params = NormParams::default();
    let log = SymbolSpec::LogOneMinusZ.series(params.degree)?;
    let rep = bp_seminorm(&log, 2.0, &params)?;
    let d = rep.rings.densities();
    for u in 3..=8 {
        let ratio = d[u - 1] / d[u - 2];
        b.check(
            (ratio / SQRT_2 - 1.0).abs() <= 0.05,
            format!("B_2 ring ratio u={}->{u}: {ratio:.6} (sqrt 2 = {SQRT_2:.6})", u - 1),
        );
    }
    b.note(format!("B_2 growth exponent {:.6}", rep.growth_exponent));
    let w = WeightDensity::hardy(SymbolSpec::LogOneMinusZ, 2, 2.0)?;
    let prof = box_density_profile(&w, 8, &params)?;
    b.check(
        prof.slope() >= 1.8 && prof.verdict() == Verdict::Vanishing,
        format!(
            "mu_(g,2,2) box density slope {:.6}, verdict {}",
            prof.slope(),
            prof.verdict()
        ),
    );
    Ok(b.finish())
}

fn corollary() -> Result<ScenarioOutcome> {
    let mut b = Builder::new("corollary");
    let params = NormParams::default();
    let (p, q, alpha, beta, gamma, r) = (2.0, 2.0, 0.0, 0.0, 1.5, 0.5);
    let edge = |n: f64| (beta + n * q + 2.0) / q - (2.0 + alpha) / p;
    b.check(
        edge(1.0) < gamma && gamma <= edge(2.0),
        format!(
            "gamma window for n=2: ({:.3}, {:.3}], gamma = {gamma}",
            edge(1.0),
            edge(2.0)
        ),
    );
    let exponent = q * (2.0 + alpha) / p;
    let ladder = ray_ladder(0.0, 2..=9);
    for (n, expect) in [(1usize, -1.0), (2, 1.0)] {
        let predicted = beta + n as f64 * q + 2.0 - gamma * q - exponent;
        let w = WeightDensity::bergman(SymbolSpec::PowDerivative { gamma }, n, q, beta)?;
        let prof = ball_density_profile(&w, r, exponent, &ladder, &params)?;
        let want = if expect < 0.0 {
            Verdict::Divergent
        } else {
            Verdict::Vanishing
        };
        b.check(
            (prof.slope() - expect).abs() <= 0.1 && prof.verdict() == want,
            format!(
                "n={n}: ball density slope {:.6} (predicted {predicted}), verdict {}",
                prof.slope(),
                prof.verdict()
            ),
        );
    }
    Ok(b.finish())
}

/// Symbols and orders checked for kernel/density coherence.
pub fn coherence_cases() -> Vec<(&'static str, SymbolSpec, usize)> {
    vec![
        ("z", SymbolSpec::monomial(1), 1),
        ("log 1/(1-z)", SymbolSpec::LogOneMinusZ, 2),
        ("g'=(1-z)^-0.5", SymbolSpec::PowDerivative { gamma: 0.5 }, 1),
        ("g'=(1-z)^-1.5", SymbolSpec::PowDerivative { gamma: 1.5 }, 1),
        ("g'=(1-z)^-1.5", SymbolSpec::PowDerivative { gamma: 1.5 }, 2),
    ]
}

fn essnorm_coherence() -> Result<ScenarioOutcome> {
    let mut b = Builder::new("essnorm-coherence");
    let cfg = EssnormConfig::default();
    for (label, g, n) in coherence_cases() {
        let h = hardy_essnorm_estimate(&g, n, 2.0, &cfg)?;
        b.check(
            h.coherent,
            format!(
                "Hardy   {label}, n={n}: kernel slope {:.4}, density slope {:.4}, {}",
                h.kernel_profile.slope(),
                h.carleson_profile.slope(),
                h.compactness
            ),
        );
        let a = bergman_essnorm_estimate(&g, n, 2.0, 2.0, 0.0, 0.0, &cfg)?;
        b.check(
            a.coherent,
            format!(
                "Bergman {label}, n={n}: kernel slope {:.4}, density slope {:.4}, {}",
                a.kernel_profile.slope(),
                a.carleson_profile.slope(),
                a.compactness
            ),
        );
    }
    let h = hardy_essnorm_estimate(&SymbolSpec::zero(), 1, 2.0, &cfg)?;
    let a = bergman_essnorm_estimate(&SymbolSpec::zero(), 1, 2.0, 2.0, 0.0, 0.0, &cfg)?;
    let zero = [&h, &a]
        .iter()
        .all(|r| r.kernel_profile.is_zero() && r.carleson_profile.is_zero());
    b.check(zero, "zero symbol: all profiles identically zero".into());
    Ok(b.finish())
}
