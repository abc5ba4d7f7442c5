//! Ladders of `(scale, density)` pairs with a fitted log-log slope. These
//! stand in for `sup`/`limsup` statements that cannot be evaluated on a
//! truncated representation.

use std::fmt;

use crate::error::{Error, Result};

/// Slopes with `|slope| <= SLOPE_BAND` count as flat.
pub const SLOPE_BAND: f64 = 0.1;
/// Largest RMS log-residual for which a flat fit is called bounded.
pub const RESIDUAL_MAX: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct ProfilePoint {
    pub scale: f64,
    pub density: f64,
    pub region_id: String,
    pub tail_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// RMS residual of `ln density` about the fitted line.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Densities decay as the scale shrinks.
    Vanishing,
    /// Flat, well-fitted ladder.
    Bounded,
    /// Densities grow as the scale shrinks.
    Divergent,
    /// Flat slope but a poor fit.
    Indeterminate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Vanishing => "vanishing",
            Verdict::Bounded => "bounded",
            Verdict::Divergent => "divergent",
            Verdict::Indeterminate => "indeterminate",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    points: Vec<ProfilePoint>,
    fit: SlopeFit,
}

impl DensityProfile {
    /// Scales must be strictly decreasing, densities finite and nonnegative.
    pub fn new(points: Vec<ProfilePoint>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::param("a profile needs at least two ladder points"));
        }
        for w in points.windows(2) {
            if w[1].scale >= w[0].scale {
                return Err(Error::param("profile scales must be strictly decreasing"));
            }
        }
        if let Some(p) = points.iter().find(|p| !(p.density.is_finite() && p.density >= 0.0)) {
            return Err(Error::param(format!(
                "invalid density {} at scale {}",
                p.density, p.scale
            )));
        }
        if points.iter().any(|p| !(p.scale > 0.0)) {
            return Err(Error::param("profile scales must be positive"));
        }
        let xs: Vec<f64> = points.iter().map(|p| p.scale).collect();
        let ys: Vec<f64> = points.iter().map(|p| p.density).collect();
        let fit = fit_log_log(&xs, &ys);
        Ok(Self { points, fit })
    }

    /// Convenience constructor from parallel slices.
    pub fn from_pairs(scales: &[f64], densities: &[f64]) -> Result<Self> {
        let points = scales
            .iter()
            .zip(densities)
            .enumerate()
            .map(|(i, (&scale, &density))| ProfilePoint {
                scale,
                density,
                region_id: i.to_string(),
                tail_estimate: 0.0,
            })
            .collect();
        Self::new(points)
    }

    pub fn points(&self) -> &[ProfilePoint] {
        &self.points
    }

    pub fn scales(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.scale).collect()
    }

    pub fn densities(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.density).collect()
    }

    pub fn fit(&self) -> SlopeFit {
        self.fit
    }

    pub fn slope(&self) -> f64 {
        self.fit.slope
    }

    pub fn is_zero(&self) -> bool {
        self.points.iter().all(|p| p.density == 0.0)
    }

    pub fn verdict(&self) -> Verdict {
        if self.is_zero() {
            return Verdict::Vanishing;
        }
        classify(self.fit)
    }

    /// Maximum density over the last `k` ladder points.
    pub fn tail_max(&self, k: usize) -> f64 {
        let start = self.points.len().saturating_sub(k);
        self.points[start..].iter().fold(0.0, |m, p| m.max(p.density))
    }

    /// `D(delta) = max { density(s) : s <= delta }` at every ladder scale;
    /// nondecreasing in the scale.
    pub fn envelope(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.points.len()];
        let mut running: f64 = 0.0;
        for (i, p) in self.points.iter().enumerate().rev() {
            running = running.max(p.density);
            out[i] = running;
        }
        out
    }
}

pub fn classify(fit: SlopeFit) -> Verdict {
    if fit.slope >= SLOPE_BAND {
        Verdict::Vanishing
    } else if fit.slope <= -SLOPE_BAND {
        Verdict::Divergent
    } else if fit.residual <= RESIDUAL_MAX {
        Verdict::Bounded
    } else {
        Verdict::Indeterminate
    }
}

/// Least-squares line through `(ln x, ln y)` over pairs with `y > 0`.
/// Fewer than two usable pairs give a zero slope.
pub fn fit_log_log(xs: &[f64], ys: &[f64]) -> SlopeFit {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x > 0.0 && **y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return SlopeFit {
            slope: 0.0,
            intercept: pts.first().map_or(f64::NEG_INFINITY, |p| p.1),
            residual: 0.0,
        };
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let rss: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    SlopeFit {
        slope,
        intercept,
        residual: (rss / n).sqrt(),
    }
}
