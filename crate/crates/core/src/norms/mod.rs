//! Integral means, Hardy and weighted Bergman norms, Bloch-type seminorms,
//! and the Hardy/Bergman test functions.
//!
//! Ring averages use the trapezoid rule on `M` equispaced samples, which is
//! spectrally accurate for smooth periodic integrands; `M` doubles until two
//! successive values agree. Radial integrals use Gauss-Legendre panels with
//! breakpoints `1 - 2^{-j}`.

mod kernel;
mod probe;
mod seminorm;

pub use kernel::{bergman_test_fn, hardy_test_fn, BergmanTestFn, Kernel};
pub use probe::{operator_norm_lower, NormProbe, Space};
pub use seminorm::{bloch_seminorm, bp_seminorm, sup_grid_radii, weighted_derivative_sup, BpReport, GridSup};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadrature::{geometric_panels, refine, GaussRule};
use crate::series::{PowerSeries, SymbolSpec, C64, NEGLIGIBLE_POWER};

/// Relative agreement required between ring averages at `M` and `2M`.
pub const MEAN_TOL: f64 = 1e-8;
/// Relative agreement required between radial quadratures under panel doubling.
pub const RADIAL_TOL: f64 = 1e-7;
pub const MAX_RING_SAMPLES: usize = 1 << 22;
const MAX_PANEL_REFINEMENT: u32 = 5;

/// Default boundary cap `1 - 2^{-10}`.
pub const DEFAULT_R_MAX: f64 = 1.0 - 1.0 / 1024.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormParams {
    /// Angular samples per ring; a power of two.
    pub samples: usize,
    /// Gauss-Legendre nodes per radial panel.
    pub radial_nodes: usize,
    /// Boundary-approach cap for truncated series, `0 < r_max < 1`.
    pub r_max: f64,
    /// Truncation degree used when a non-polynomial symbol is expanded.
    pub degree: usize,
}

impl Default for NormParams {
    fn default() -> Self {
        Self::with_r_max(DEFAULT_R_MAX)
    }
}

impl NormParams {
    pub fn with_r_max(r_max: f64) -> Self {
        Self {
            samples: 256,
            radial_nodes: 16,
            r_max,
            degree: degree_for_radius(r_max),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_max > 0.0 && self.r_max < 1.0) {
            return Err(Error::param(format!("r_max = {} must lie in (0, 1)", self.r_max)));
        }
        if !self.samples.is_power_of_two() || self.samples < 4 {
            return Err(Error::param(format!(
                "sample count {} must be a power of two >= 4",
                self.samples
            )));
        }
        if self.radial_nodes < 2 {
            return Err(Error::param("need at least two radial nodes per panel"));
        }
        if self.degree < 1 {
            return Err(Error::param("truncation degree must be positive"));
        }
        Ok(())
    }
}

/// Smallest power of two `N` with `r^N <= e^{-40}`, so a series with
/// bounded coefficients is resolved at radius `r`.
pub fn degree_for_radius(r: f64) -> usize {
    let n = (40.0 / -r.ln()).ceil().max(1.0) as usize;
    n.next_power_of_two()
}

pub(crate) fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p >= 1.0 {
        Ok(())
    } else {
        Err(Error::param(format!("exponent p = {p} must be >= 1")))
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > -1.0 {
        Ok(())
    } else {
        Err(Error::param(format!("weight exponent {alpha} must be > -1")))
    }
}

/// A function on the disk that can be sampled on circles `|z| = r`.
pub trait DiskFunction: Sync {
    /// Values at `r e^{2 pi i j/m}`, `j = 0..m`.
    fn ring(&self, r: f64, m: usize) -> Vec<C64>;
    /// Starting sample count for ring averages at radius `r`.
    fn ring_resolution(&self, r: f64) -> usize;
    /// True when the function is analytic on a neighbourhood of the closed
    /// disk, so its boundary values can be sampled directly.
    fn closed_disk(&self) -> bool;
    /// Distance scale on which boundary features vary.
    fn boundary_scale(&self) -> f64;
    /// Bound on the part of the function not represented, if known.
    fn tail_bound(&self) -> Option<f64> {
        self.closed_disk().then_some(0.0)
    }
    /// Degree `d` when `|f|^p` is a trigonometric polynomial of degree at
    /// most `p d / 2` on each ring (even integer `p`).
    fn trig_degree(&self, _r: f64) -> Option<usize> {
        None
    }
    /// Closed-form `(1/2 pi) int |f(r e^{i theta})|^p d theta`, when available.
    fn exact_mean_power(&self, _r: f64, _p: f64) -> Option<f64> {
        None
    }
}

impl PowerSeries {
    /// Index past which `|c_m| r^m` is negligible at radius `r`.
    fn effective_degree(&self, r: f64) -> usize {
        let n = self.degree();
        if r >= 1.0 {
            return n;
        }
        if r <= 0.0 {
            return 0;
        }
        n.min((40.0 / -r.ln()).ceil() as usize)
    }

    /// Last index carrying a coefficient above double precision relative to
    /// the peak.
    fn significant_degree(&self) -> usize {
        let peak = self.max_abs();
        self.coeffs().iter().rposition(|c| c.norm() > 1e-17 * peak).unwrap_or(0)
    }
}

impl DiskFunction for PowerSeries {
    fn ring(&self, r: f64, m: usize) -> Vec<C64> {
        self.ring_values(r, m)
    }

    fn ring_resolution(&self, r: f64) -> usize {
        (2 * (self.effective_degree(r) + 1)).next_power_of_two().max(16)
    }

    fn closed_disk(&self) -> bool {
        self.is_polynomial_like()
    }

    fn boundary_scale(&self) -> f64 {
        1.0 / (self.significant_degree() + 1) as f64
    }

    fn trig_degree(&self, r: f64) -> Option<usize> {
        Some(self.effective_degree(r))
    }

    /// Parseval: `M_2(r, f)^2 = sum |c_m|^2 r^{2m}`.
    fn exact_mean_power(&self, r: f64, p: f64) -> Option<f64> {
        if p != 2.0 {
            return None;
        }
        let r2 = r * r;
        let mut rp = 1.0;
        let mut sum = 0.0;
        for c in self.coeffs() {
            sum += c.norm_sqr() * rp;
            rp *= r2;
            if rp < NEGLIGIBLE_POWER {
                break;
            }
        }
        Some(sum)
    }
}

fn ring_average(f: &(impl DiskFunction + ?Sized), r: f64, p: f64, m: usize) -> f64 {
    let vals = f.ring(r, m);
    let sum: f64 = if p == 2.0 {
        vals.iter().map(|v| v.norm_sqr()).sum()
    } else {
        vals.iter().map(|v| v.norm().powf(p)).sum()
    };
    sum / m as f64
}

/// `(1/2 pi) int |f(r e^{i theta})|^p d theta`, converged under sample doubling.
pub fn mean_power(f: &(impl DiskFunction + ?Sized), r: f64, p: f64, m0: usize) -> Result<f64> {
    check_p(p)?;
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::domain(format!("radius {r} outside [0, 1]")));
    }
    if let Some(v) = f.exact_mean_power(r, p) {
        return Ok(v);
    }
    let mut m = m0.max(f.ring_resolution(r)).next_power_of_two();
    // Even integer exponents give trigonometric polynomials, integrated
    // exactly once enough samples are taken.
    if p.fract() == 0.0 && (p as usize).is_multiple_of(2) {
        if let Some(d) = f.trig_degree(r) {
            let need = ((p as usize) * (d + 1)).next_power_of_two();
            if need <= MAX_RING_SAMPLES {
                return Ok(ring_average(f, r, p, m.max(need)));
            }
        }
    }
    let mut prev = ring_average(f, r, p, m);
    while m < MAX_RING_SAMPLES {
        m *= 2;
        let next = ring_average(f, r, p, m);
        if (next - prev).abs() <= MEAN_TOL * next.abs() {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::accuracy(format!("ring average at r = {r}"), prev, prev))
}

/// `M_p(r, f)`, starting from `m` samples.
pub fn integral_mean(f: &(impl DiskFunction + ?Sized), r: f64, p: f64, m: usize) -> Result<f64> {
    if !m.is_power_of_two() {
        return Err(Error::param(format!("sample count {m} must be a power of two")));
    }
    Ok(mean_power(f, r, p, m)?.powf(1.0 / p))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormEstimate {
    pub value: f64,
    /// Outer radius actually used: 1 on the closed disk, `r_max` otherwise.
    pub radius: f64,
    pub tail_bound: Option<f64>,
}

fn boundary_radius(f: &(impl DiskFunction + ?Sized), params: &NormParams) -> f64 {
    if f.closed_disk() {
        1.0
    } else {
        params.r_max
    }
}

/// `||f||_{H^p} = sup_r M_p(r, f)`, read off at the outermost admissible
/// radius since `M_p` is nondecreasing in `r`.
pub fn hardy_norm(f: &(impl DiskFunction + ?Sized), p: f64, params: &NormParams) -> Result<NormEstimate> {
    params.validate()?;
    let radius = boundary_radius(f, params);
    Ok(NormEstimate {
        value: integral_mean(f, radius, p, params.samples)?,
        radius,
        tail_bound: f.tail_bound(),
    })
}

/// Hardy norm of a symbol expanded to `params.degree`, with the family's
/// coefficient tail bound at the evaluation radius.
pub fn hardy_norm_symbol(spec: &SymbolSpec, p: f64, params: &NormParams) -> Result<NormEstimate> {
    let g = spec.series(params.degree)?;
    let mut est = hardy_norm(&g, p, params)?;
    est.tail_bound = spec.tail_bound(g.degree(), est.radius);
    Ok(est)
}

/// `||f||_{A^p_alpha}` with `dA_alpha = (alpha + 1)(1 - |z|^2)^alpha dA`,
/// computed as `int_0^R M_p(r, f)^p 2(alpha + 1) r (1 - r^2)^alpha dr`.
pub fn bergman_norm(f: &(impl DiskFunction + ?Sized), p: f64, alpha: f64, params: &NormParams) -> Result<NormEstimate> {
    check_p(p)?;
    check_alpha(alpha)?;
    params.validate()?;
    let radius = boundary_radius(f, params);
    let panels = if radius == 1.0 {
        let mut levels = ((1.0 / f.boundary_scale()).log2().ceil() + 12.0).clamp(12.0, 50.0);
        if alpha < 0.0 {
            levels = levels.max(36.0 / (1.0 + alpha)).min(52.0);
        }
        geometric_panels(0.0, 1.0, levels as u32)
    } else {
        geometric_panels(0.0, radius, 64)
    };
    let rule = GaussRule::new(params.radial_nodes);
    // Nodes are placed in s = 1 - r so that 1 - r^2 = s(2 - s) keeps full
    // precision next to the boundary.
    let weight = |s: f64| 2.0 * (alpha + 1.0) * (1.0 - s) * (s * (2.0 - s)).powf(alpha);

    let mut prev: Option<f64> = None;
    for level in 0..=MAX_PANEL_REFINEMENT {
        let nodes: Vec<(f64, f64)> = refine(&panels, level)
            .iter()
            .flat_map(|&(a, b)| rule.on(1.0 - b, 1.0 - a))
            .collect();
        let terms = nodes
            .par_iter()
            .map(|&(s, w)| Ok(w * weight(s) * mean_power(f, 1.0 - s, p, params.samples)?))
            .collect::<Result<Vec<f64>>>()?;
        let total: f64 = terms.iter().sum();
        if let Some(prev) = prev {
            if (total - prev).abs() <= RADIAL_TOL * total.abs() {
                return Ok(NormEstimate {
                    value: total.powf(1.0 / p),
                    radius,
                    tail_bound: f.tail_bound(),
                });
            }
        }
        prev = Some(total);
    }
    let last = prev.unwrap_or(0.0);
    Err(Error::accuracy(
        "radial Bergman quadrature",
        last.powf(1.0 / p),
        last.powf(1.0 / p),
    ))
}
