//! Essential-norm surrogates: test-function ladders `||T k_a||` as `|a| -> 1`
//! paired with Carleson density ladders on the same scales.

use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt;

use rayon::prelude::*;

use crate::carleson::{ball_density_profile, box_density_profile, ray_ladder, WeightDensity};
use crate::error::{Error, Result};
use crate::norms::{bergman_norm, bergman_test_fn, hardy_norm, Kernel, NormParams};
use crate::operators::OperatorSpec;
use crate::profile::{DensityProfile, ProfilePoint, Verdict, SLOPE_BAND};
use crate::series::{SymbolSpec, C64};

/// Ladder points used for the limsup surrogate.
pub const TAIL_POINTS: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct EssnormConfig {
    /// Ladder `1 - |a| = 2^{-u}`, `u = 1..=levels` (Hardy) or `2..=levels + 1`
    /// (Bergman).
    pub levels: u32,
    /// Rays along which test points and balls approach the boundary.
    pub rays: Vec<f64>,
    /// Bergman ball radius factor.
    pub ball_radius: f64,
    pub params: NormParams,
}

impl Default for EssnormConfig {
    fn default() -> Self {
        Self {
            levels: 8,
            rays: vec![0.0, FRAC_PI_4, PI],
            ball_radius: 0.5,
            params: NormParams::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Compactness {
    Compact,
    BoundedNoncompact,
    Unbounded,
    Indeterminate,
}

impl fmt::Display for Compactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Compactness::Compact => "compact",
            Compactness::BoundedNoncompact => "bounded, not compact",
            Compactness::Unbounded => "unbounded",
            Compactness::Indeterminate => "indeterminate",
        })
    }
}

impl From<Verdict> for Compactness {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Vanishing => Compactness::Compact,
            Verdict::Bounded => Compactness::BoundedNoncompact,
            Verdict::Divergent => Compactness::Unbounded,
            Verdict::Indeterminate => Compactness::Indeterminate,
        }
    }
}

/// `-1`, `0` or `1` according to the slope band; zero profiles count as decaying.
pub fn slope_sign(profile: &DensityProfile) -> i8 {
    if profile.is_zero() || profile.slope() >= SLOPE_BAND {
        1
    } else if profile.slope() <= -SLOPE_BAND {
        -1
    } else {
        0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EssentialNormReport {
    pub kernel_profile: DensityProfile,
    pub carleson_profile: DensityProfile,
    /// Kernel value over density at each ladder scale; `None` where the
    /// density vanishes.
    pub ratios: Vec<Option<f64>>,
    pub kernel_verdict: Verdict,
    pub carleson_verdict: Verdict,
    pub compactness: Compactness,
    /// Slope signs of the two profiles agree.
    pub coherent: bool,
    /// Maximum over the last [`TAIL_POINTS`] ladder points.
    pub kernel_limsup: f64,
    pub carleson_limsup: f64,
}

impl EssentialNormReport {
    fn assemble(kernel_profile: DensityProfile, carleson_profile: DensityProfile) -> Self {
        let ratios = kernel_profile
            .densities()
            .iter()
            .zip(carleson_profile.densities())
            .map(|(k, d)| (d > 0.0).then(|| k / d))
            .collect();
        let kernel_verdict = kernel_profile.verdict();
        let carleson_verdict = carleson_profile.verdict();
        Self {
            ratios,
            kernel_verdict,
            carleson_verdict,
            compactness: carleson_verdict.into(),
            coherent: slope_sign(&kernel_profile) == slope_sign(&carleson_profile),
            kernel_limsup: kernel_profile.tail_max(TAIL_POINTS),
            carleson_limsup: carleson_profile.tail_max(TAIL_POINTS),
            kernel_profile,
            carleson_profile,
        }
    }

    /// Largest over smallest ratio across the last [`TAIL_POINTS`] points.
    pub fn ratio_spread(&self) -> Option<f64> {
        let start = self.ratios.len().saturating_sub(TAIL_POINTS);
        let tail: Option<Vec<f64>> = self.ratios[start..].iter().copied().collect();
        let tail = tail?;
        let hi = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lo = tail.iter().cloned().fold(f64::INFINITY, f64::min);
        Some(hi / lo)
    }
}

fn test_degree(a: C64) -> usize {
    ((40.0 / (1.0 - a.norm())).ceil() as usize).max(16)
}

fn check_ladder(ladder: &[C64]) -> Result<()> {
    if ladder.len() < 2 {
        return Err(Error::param("a kernel ladder needs at least two points"));
    }
    if ladder.iter().any(|a| !(a.norm() < 1.0)) {
        return Err(Error::domain("ladder points must lie in the open disk"));
    }
    Ok(())
}

/// `||T_{g,n} k_a||_{H^p}^p` along `ladder`, with scale `1 - |a|`.
pub fn hardy_kernel_profile(
    g: &SymbolSpec,
    n: usize,
    p: f64,
    ladder: &[C64],
    params: &NormParams,
) -> Result<DensityProfile> {
    check_ladder(ladder)?;
    let op = OperatorSpec::new(g.clone(), n)?;
    let points = ladder
        .par_iter()
        .map(|&a| {
            let k = Kernel::hardy(a, p)?.series(test_degree(a));
            let image = op.image(&k, params.degree)?;
            let est = hardy_norm(&image, p, params)?;
            Ok(ProfilePoint {
                scale: 1.0 - a.norm(),
                density: est.value.powf(p),
                region_id: format!("a={:.12e}{:+.12e}i", a.re, a.im),
                tail_estimate: 0.0,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    DensityProfile::new(points)
}

/// `q/p <= (beta + 2)/(alpha + 2)`.
pub fn check_balance(p: f64, q: f64, alpha: f64, beta: f64) -> Result<()> {
    if q / p <= (beta + 2.0) / (alpha + 2.0) + 1e-15 {
        Ok(())
    } else {
        Err(Error::param(format!(
            "q/p = {} exceeds (beta + 2)/(alpha + 2) = {}",
            q / p,
            (beta + 2.0) / (alpha + 2.0)
        )))
    }
}

/// `||T_{g,n} k_a||_{A^q_beta}^q` for the normalized `A^p_alpha` kernels
/// along `ladder`, with scale `1 - |a|^2`.
#[allow(clippy::too_many_arguments)]
pub fn bergman_kernel_profile(
    g: &SymbolSpec,
    n: usize,
    p: f64,
    q: f64,
    alpha: f64,
    beta: f64,
    ladder: &[C64],
    params: &NormParams,
) -> Result<DensityProfile> {
    check_balance(p, q, alpha, beta)?;
    check_ladder(ladder)?;
    let op = OperatorSpec::new(g.clone(), n)?;
    let points = ladder
        .par_iter()
        .map(|&a| {
            let k = bergman_test_fn(a, p, alpha, test_degree(a), params)?.series;
            let image = op.image(&k, params.degree)?;
            let est = bergman_norm(&image, q, beta, params)?;
            Ok(ProfilePoint {
                scale: 1.0 - a.norm_sqr(),
                density: est.value.powf(q),
                region_id: format!("a={:.12e}{:+.12e}i", a.re, a.im),
                tail_estimate: 0.0,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    DensityProfile::new(points)
}

/// Pointwise maximum of profiles sharing a ladder.
fn ray_max(profiles: Vec<DensityProfile>) -> Result<DensityProfile> {
    let mut iter = profiles.into_iter();
    let first = iter.next().ok_or_else(|| Error::param("need at least one ray"))?;
    let mut points = first.points().to_vec();
    for prof in iter {
        for (best, p) in points.iter_mut().zip(prof.points()) {
            if p.density > best.density {
                *best = p.clone();
            }
        }
    }
    DensityProfile::new(points)
}

fn check_config(cfg: &EssnormConfig) -> Result<()> {
    cfg.params.validate()?;
    if cfg.levels < 2 {
        return Err(Error::param("need at least two ladder levels"));
    }
    if cfg.rays.is_empty() {
        return Err(Error::param("need at least one ray"));
    }
    if (-(cfg.levels as f64)).exp2() <= 1.0 - cfg.params.r_max {
        return Err(Error::Cap(format!(
            "ladder level {} reaches past r_max = {}",
            cfg.levels, cfg.params.r_max
        )));
    }
    Ok(())
}

/// Box densities of `mu_{g,n,p}` against the Hardy kernel ladder along the
/// configured rays, on scales `2^{-u}`, `u = 1..=levels`.
pub fn hardy_essnorm_estimate(g: &SymbolSpec, n: usize, p: f64, cfg: &EssnormConfig) -> Result<EssentialNormReport> {
    check_config(cfg)?;
    let weight = WeightDensity::hardy(g.clone(), n, p)?;
    let carleson = box_density_profile(&weight, cfg.levels, &cfg.params)?;
    let kernels = cfg
        .rays
        .iter()
        .map(|&theta| hardy_kernel_profile(g, n, p, &ray_ladder(theta, 1..=cfg.levels), &cfg.params))
        .collect::<Result<Vec<_>>>()?;
    Ok(EssentialNormReport::assemble(ray_max(kernels)?, carleson))
}

/// Ball densities of `mu_n` (`s = q`, `t = beta + nq`, normalized by
/// `(1 - |a|^2)^{q(2 + alpha)/p}`) against the Bergman kernel ladder.
#[allow(clippy::too_many_arguments)]
pub fn bergman_essnorm_estimate(
    g: &SymbolSpec,
    n: usize,
    p: f64,
    q: f64,
    alpha: f64,
    beta: f64,
    cfg: &EssnormConfig,
) -> Result<EssentialNormReport> {
    check_balance(p, q, alpha, beta)?;
    check_config(cfg)?;
    let weight = WeightDensity::bergman(g.clone(), n, q, beta)?;
    let exponent = q * (2.0 + alpha) / p;
    let us = 2..=cfg.levels + 1;
    let mut balls = Vec::new();
    let mut kernels = Vec::new();
    for &theta in &cfg.rays {
        let ladder = ray_ladder(theta, us.clone());
        balls.push(ball_density_profile(
            &weight,
            cfg.ball_radius,
            exponent,
            &ladder,
            &cfg.params,
        )?);
        kernels.push(bergman_kernel_profile(g, n, p, q, alpha, beta, &ladder, &cfg.params)?);
    }
    Ok(EssentialNormReport::assemble(ray_max(kernels)?, ray_max(balls)?))
}
