use rayon::prelude::*;

use super::{check_p, NormParams};
use crate::error::Result;
use crate::profile::{DensityProfile, ProfilePoint};
use crate::series::{PowerSeries, C64};

/// Location and value of a grid supremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSup {
    pub value: f64,
    pub at: C64,
}

/// Radii `0` and `1 - 2^{-j/4}` up to `r_max`, with `r_max` itself last.
pub fn sup_grid_radii(r_max: f64) -> Vec<f64> {
    let mut radii = vec![0.0];
    for j in 1.. {
        let r = 1.0 - (-(j as f64) / 4.0).exp2();
        if r >= r_max {
            break;
        }
        radii.push(r);
    }
    radii.push(r_max);
    radii
}

fn weight(r: f64, exponent: f64) -> f64 {
    if exponent == 0.0 {
        1.0
    } else {
        (1.0 - r * r).powf(exponent)
    }
}

/// `sup (1 - |z|^2)^e |f'(z)|` over the radial grid times `params.samples`
/// angles, refined once on a 9x9 patch around the grid argmax.
pub fn weighted_derivative_sup(f: &PowerSeries, exponent: f64, params: &NormParams) -> GridSup {
    let fd = f.derivative();
    let m = params.samples;
    let radii = sup_grid_radii(params.r_max);
    let ring_max: Vec<(f64, usize)> = radii
        .par_iter()
        .map(|&r| {
            let w = weight(r, exponent);
            fd.ring_values(r, m).iter().enumerate().fold((0.0, 0), |best, (j, v)| {
                let x = w * v.norm();
                if x > best.0 {
                    (x, j)
                } else {
                    best
                }
            })
        })
        .collect();
    let (mut i_best, mut best) = (0, (0.0, 0));
    for (i, &rm) in ring_max.iter().enumerate() {
        if rm.0 > best.0 {
            i_best = i;
            best = rm;
        }
    }
    let step = std::f64::consts::TAU / m as f64;
    let mut sup = GridSup {
        value: best.0,
        at: C64::from_polar(radii[i_best], step * best.1 as f64),
    };
    if best.0 == 0.0 {
        return sup;
    }

    let r_lo = radii[i_best.saturating_sub(1)];
    let r_hi = radii[(i_best + 1).min(radii.len() - 1)];
    let theta0 = step * best.1 as f64;
    for a in 0..9 {
        let r = r_lo + (r_hi - r_lo) * a as f64 / 8.0;
        let w = weight(r, exponent);
        for b in 0..9 {
            let theta = theta0 + step * (b as f64 - 4.0) / 4.0;
            let z = C64::from_polar(r, theta);
            let x = w * fd.horner(z).norm();
            if x > sup.value {
                sup = GridSup { value: x, at: z };
            }
        }
    }
    sup
}

/// `sup (1 - |z|^2)|f'(z)|` on the grid.
pub fn bloch_seminorm(f: &PowerSeries, params: &NormParams) -> GridSup {
    weighted_derivative_sup(f, 1.0, params)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BpReport {
    pub sup: GridSup,
    /// Ring maxima of `(1 - r^2)^{1 - 1/p}|g'|` at `r = 1 - 2^{-u}`, with
    /// scale `1 - r`.
    pub rings: DensityProfile,
    /// Fitted exponent `e` in `value ~ (1 - r)^e`, over `u >= 2`.
    pub growth_exponent: f64,
}

/// `sup (1 - |z|^2)^{1 - 1/p}|g'(z)|` on the grid, with the ring ladder used
/// to read off growth toward the boundary.
pub fn bp_seminorm(g: &PowerSeries, p: f64, params: &NormParams) -> Result<BpReport> {
    check_p(p)?;
    params.validate()?;
    let exponent = 1.0 - 1.0 / p;
    let sup = weighted_derivative_sup(g, exponent, params);
    let gd = g.derivative();
    let us: Vec<i32> = (1..)
        .take_while(|&u| 1.0 - (-(u as f64)).exp2() <= params.r_max)
        .collect();
    let points: Vec<ProfilePoint> = us
        .par_iter()
        .map(|&u| {
            let r = 1.0 - (-(u as f64)).exp2();
            let w = weight(r, exponent);
            let density = gd
                .ring_values(r, params.samples)
                .iter()
                .fold(0.0f64, |m, v| m.max(w * v.norm()));
            ProfilePoint {
                scale: 1.0 - r,
                density,
                region_id: format!("r=1-2^-{u}"),
                tail_estimate: 0.0,
            }
        })
        .collect();
    let rings = DensityProfile::new(points)?;
    let fitted: Vec<&ProfilePoint> = rings.points().iter().skip(1).collect();
    let growth_exponent = if fitted.len() >= 2 {
        let xs: Vec<f64> = fitted.iter().map(|p| p.scale).collect();
        let ys: Vec<f64> = fitted.iter().map(|p| p.density).collect();
        crate::profile::fit_log_log(&xs, &ys).slope
    } else {
        rings.slope()
    };
    Ok(BpReport {
        sup,
        rings,
        growth_exponent,
    })
}
