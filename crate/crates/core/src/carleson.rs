//! Weighted area measures `|g'|^s (1 - |z|^2)^t dA` over Carleson boxes and
//! Bergman balls, and their density ladders.
//!
//! Area is normalized, `dA = (1/pi) r dr dtheta`. Weights use the closed form
//! of `g'` for the named symbol families. Quadrature is tensor-product
//! Gauss-Legendre on panels graded toward the boundary and toward the
//! symbol's singular point, refined until two passes agree.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::norms::NormParams;
use crate::profile::{DensityProfile, ProfilePoint};
use crate::quadrature::{geometric_panels, graded_panels, refine, GaussRule, Panel};
use crate::series::{SymbolSpec, C64};

/// Relative agreement required between successive refinements.
pub const REGION_TOL: f64 = 1e-9;
const MAX_REFINEMENT: u32 = 5;

/// `w(z) = |g'(z)|^s (1 - |z|^2)^t`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightDensity {
    pub symbol: SymbolSpec,
    pub s: f64,
    pub t: f64,
}

impl WeightDensity {
    pub fn new(symbol: SymbolSpec, s: f64, t: f64) -> Result<Self> {
        let w = Self { symbol, s, t };
        w.validate()?;
        Ok(w)
    }

    /// `mu_{g,n,p}`: `s = p`, `t = np - 1`.
    pub fn hardy(symbol: SymbolSpec, n: usize, p: f64) -> Result<Self> {
        Self::new(symbol, p, n as f64 * p - 1.0)
    }

    /// `mu_n` on the Bergman side: `s = q`, `t = beta + nq`.
    pub fn bergman(symbol: SymbolSpec, n: usize, q: f64, beta: f64) -> Result<Self> {
        Self::new(symbol, q, beta + n as f64 * q)
    }

    /// `(1 - |z|^2)^t dA`.
    pub fn radial(t: f64) -> Result<Self> {
        Self::new(SymbolSpec::zero(), 0.0, t)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s.is_finite() && self.s >= 0.0) {
            return Err(Error::param(format!("weight exponent s = {} must be >= 0", self.s)));
        }
        if !(self.t.is_finite() && self.t > -1.0) {
            return Err(Error::param(format!("weight exponent t = {} must be > -1", self.t)));
        }
        self.symbol.validate()
    }

    pub fn is_radial(&self) -> bool {
        self.s == 0.0
    }

    fn symbol_factor(&self, z: C64) -> f64 {
        if self.s == 0.0 {
            1.0
        } else {
            self.symbol.derivative_abs(z).powf(self.s)
        }
    }

    /// `w` at `z`, with `1 - |z|^2` supplied by the caller.
    fn eval_with(&self, z: C64, one_minus_sq: f64) -> f64 {
        let radial = if self.t == 0.0 { 1.0 } else { one_minus_sq.powf(self.t) };
        radial * self.symbol_factor(z)
    }

    pub fn eval(&self, z: C64) -> f64 {
        self.eval_with(z, 1.0 - z.norm_sqr())
    }

    pub fn eval_polar(&self, r: f64, theta: f64) -> f64 {
        self.eval_with(C64::from_polar(r, theta), (1.0 - r) * (1.0 + r))
    }

    /// Upper bound for the mass of `{r_cap <= |z| < 1}` over an arc of
    /// normalized length `arc`, from `|g'| <= C (1 - |z|)^{-e}`. Infinite when
    /// that bound is not integrable up to the circle.
    pub fn annulus_tail(&self, r_cap: f64, arc: f64) -> f64 {
        let (c, e) = self.symbol.derivative_growth();
        let cs = if self.s == 0.0 { 1.0 } else { c.powf(self.s) };
        if cs == 0.0 {
            return 0.0;
        }
        let power = self.t - e * self.s + 1.0;
        if power <= 0.0 {
            return f64::INFINITY;
        }
        let eps = 1.0 - r_cap;
        2.0 * arc * cs * 2f64.powf(self.t.max(0.0)) * eps.powf(power) / power
    }
}

/// `S(I)` for the arc of normalized length `length` centred at `center_angle`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarlesonBox {
    pub center_angle: f64,
    pub length: f64,
}

impl CarlesonBox {
    pub fn new(center_angle: f64, length: f64) -> Result<Self> {
        if !(length > 0.0 && length <= 1.0) || !center_angle.is_finite() {
            return Err(Error::param(format!("arc length {length} must lie in (0, 1]")));
        }
        Ok(Self { center_angle, length })
    }

    /// Angular half-width `pi |I|`.
    pub fn half_width(&self) -> f64 {
        PI * self.length
    }
}

/// `D(a, r) = { |z - a| < r (1 - |a|) }`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BergmanBall {
    pub a: C64,
    pub r: f64,
}

impl BergmanBall {
    pub fn new(a: C64, r: f64) -> Result<Self> {
        if !(a.norm() < 1.0) {
            return Err(Error::domain(format!("ball centre {a} must satisfy |a| < 1")));
        }
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::param(format!("ball radius factor {r} must lie in (0, 1)")));
        }
        Ok(Self { a, r })
    }

    /// Euclidean radius `r (1 - |a|)`.
    pub fn radius(&self) -> f64 {
        self.r * (1.0 - self.a.norm())
    }
}

/// Polar rectangle `[r0, r1] x [theta0, theta1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarRegion {
    pub r0: f64,
    pub r1: f64,
    pub theta0: f64,
    pub theta1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionMeasure {
    pub value: f64,
    /// Estimated mass of the part of the region beyond the radius cap.
    pub tail_estimate: f64,
}

fn wrap_angle(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(TAU) - PI;
    if y == -PI {
        PI
    } else {
        y
    }
}

/// Converges `sum over (x, y) nodes` under uniform refinement of both
/// panel families.
fn tensor_integral(
    what: &str,
    xs: &[Panel],
    ys: &[Panel],
    rule: &GaussRule,
    f: impl Fn(f64, f64) -> f64,
) -> Result<f64> {
    let mut prev: Option<(f64, f64)> = None;
    for level in 0..=MAX_REFINEMENT {
        let xn: Vec<(f64, f64)> = refine(xs, level).iter().flat_map(|&(a, b)| rule.on(a, b)).collect();
        let yn: Vec<(f64, f64)> = refine(ys, level).iter().flat_map(|&(a, b)| rule.on(a, b)).collect();
        let mut total = 0.0;
        for &(x, wx) in &xn {
            let mut row = 0.0;
            for &(y, wy) in &yn {
                row += wy * f(x, y);
            }
            total += wx * row;
        }
        if let Some(p) = prev.map(|(_, p)| p) {
            if (total - p).abs() <= REGION_TOL * total.abs() {
                return Ok(total);
            }
        }
        prev = Some((prev.map_or(total, |(_, p)| p), total));
    }
    let (previous, last) = prev.unwrap_or((0.0, 0.0));
    Err(Error::accuracy(what, last, previous))
}

/// Angular panels over `[theta0, theta1]`, graded toward the point of the
/// arc nearest the weight's singular angle.
fn angular_panels(w: &WeightDensity, theta0: f64, theta1: f64, r_outer: f64) -> Vec<Panel> {
    let width = theta1 - theta0;
    let pieces = (width / (PI / 4.0)).ceil().max(1.0) as usize;
    let uniform = || {
        let h = width / pieces as f64;
        (0..pieces)
            .map(|i| {
                (
                    theta0 + i as f64 * h,
                    if i + 1 == pieces {
                        theta1
                    } else {
                        theta0 + (i + 1) as f64 * h
                    },
                )
            })
            .collect()
    };
    let singular = match w.symbol.singular_angle() {
        Some(s) if w.s > 0.0 => s,
        _ => return uniform(),
    };
    let mid = 0.5 * (theta0 + theta1);
    let half = 0.5 * width;
    let d = wrap_angle(singular - mid);
    let (focus, dist) = if d.abs() <= half {
        (mid + d, 0.0)
    } else {
        (mid + d.signum() * half, d.abs() - half)
    };
    let scale = (1.0 - r_outer).max(dist);
    if scale >= width {
        return uniform();
    }
    graded_panels(theta0, theta1, focus, 0.5 * scale)
}

/// Mass of `w dA` over a polar rectangle inside the radius cap.
pub fn region_measure(w: &WeightDensity, region: PolarRegion, params: &NormParams) -> Result<f64> {
    w.validate()?;
    let PolarRegion { r0, r1, theta0, theta1 } = region;
    if !(0.0 <= r0 && r0 <= r1 && r1 < 1.0) || !(theta0 <= theta1 && theta1 - theta0 <= TAU) {
        return Err(Error::param(format!("invalid polar region {region:?}")));
    }
    if r1 > params.r_max {
        return Err(Error::Cap(format!(
            "region reaches radius {r1} beyond r_max = {}",
            params.r_max
        )));
    }
    if r0 == r1 || theta0 == theta1 {
        return Ok(0.0);
    }
    let rule = GaussRule::new(params.radial_nodes);
    let rs = geometric_panels(r0, r1, 60);
    let ts = angular_panels(w, theta0, theta1, r1);
    tensor_integral("polar region quadrature", &rs, &ts, &rule, |r, theta| {
        w.eval_polar(r, theta) * r / PI
    })
}

/// `mu(S(I))` over `1 - |I| <= r <= r_max`, with the cut-off annulus
/// reported as a tail estimate.
pub fn box_measure(w: &WeightDensity, b: CarlesonBox, params: &NormParams) -> Result<RegionMeasure> {
    params.validate()?;
    let inner = 1.0 - b.length;
    if inner >= params.r_max {
        return Err(Error::Cap(format!(
            "box of length {} lies beyond r_max = {}",
            b.length, params.r_max
        )));
    }
    let h = b.half_width();
    let region = PolarRegion {
        r0: inner,
        r1: params.r_max,
        theta0: b.center_angle - h,
        theta1: b.center_angle + h,
    };
    Ok(RegionMeasure {
        value: region_measure(w, region, params)?,
        tail_estimate: w.annulus_tail(params.r_max, b.length),
    })
}

/// Dyadic box ladder: at level `L` the maximum of `mu(S(I))/|I|` over arcs
/// of length `2^{-L}` centred at `pi k 2^{-L}`, `k = 0..2^{L+1}` (dyadic
/// and half-offset arcs). Scales are `2^{-L}`.
pub fn box_density_profile(w: &WeightDensity, levels: u32, params: &NormParams) -> Result<DensityProfile> {
    if levels < 2 {
        return Err(Error::param("a box ladder needs at least two levels"));
    }
    w.validate()?;
    params.validate()?;
    let mut points = Vec::with_capacity(levels as usize);
    for level in 1..=levels {
        let length = (-(level as f64)).exp2();
        let count = 1usize << (level + 1);
        let per_arc = (0..count)
            .into_par_iter()
            .map(|k| {
                let center = PI * k as f64 * length;
                let m = box_measure(w, CarlesonBox::new(center, length)?, params)?;
                Ok((k, m))
            })
            .collect::<Result<Vec<_>>>()?;
        let (k, best) = per_arc.iter().fold(
            (0, per_arc[0].1),
            |acc, &(k, m)| if m.value > acc.1.value { (k, m) } else { acc },
        );
        points.push(ProfilePoint {
            scale: length,
            density: best.value / length,
            region_id: format!("L={level};k={k}"),
            tail_estimate: best.tail_estimate / length,
        });
    }
    DensityProfile::new(points)
}

/// `mu(D(a, r))`, in polar coordinates about `a`.
pub fn ball_measure(w: &WeightDensity, ball: BergmanBall, params: &NormParams) -> Result<f64> {
    w.validate()?;
    params.validate()?;
    let radius = ball.radius();
    let outer = ball.a.norm() + radius;
    if outer > params.r_max + 1e-15 {
        return Err(Error::Cap(format!(
            "ball reaches radius {outer} beyond r_max = {}",
            params.r_max
        )));
    }
    // Direction from a toward the nearest trouble: the singular point when
    // the weight has one, else the nearest boundary point.
    let toward = match w.symbol.singular_angle() {
        Some(s) if w.s > 0.0 => (C64::from_polar(1.0, s) - ball.a).arg(),
        _ => {
            if ball.a.norm() > 0.0 {
                ball.a.arg()
            } else {
                0.0
            }
        }
    };
    let rel_gap = (1.0 - ball.r) / ball.r;
    let levels = (1.0 / rel_gap).log2().ceil().max(0.0) as u32 + 3;
    let mut cuts = vec![0.0];
    for j in 1..=levels {
        cuts.push(radius * (1.0 - (-(j as f64)).exp2()));
    }
    cuts.push(radius);
    let ss: Vec<Panel> = cuts.windows(2).map(|c| (c[0], c[1])).collect();
    let phis = graded_panels(toward - PI, toward + PI, toward, 0.5 * rel_gap.min(PI));
    let rule = GaussRule::new(params.radial_nodes);
    tensor_integral("ball quadrature", &ss, &phis, &rule, |s, phi| {
        w.eval(ball.a + C64::from_polar(s, phi)) * s / PI
    })
}

/// Points `a = (1 - 2^{-u}) e^{i theta}` for `u` in `us`.
pub fn ray_ladder(theta: f64, us: impl IntoIterator<Item = u32>) -> Vec<C64> {
    us.into_iter()
        .map(|u| C64::from_polar(1.0 - (-(u as f64)).exp2(), theta))
        .collect()
}

/// `mu(D(a, r)) / (1 - |a|^2)^exponent` along `ladder`, with scale
/// `1 - |a|^2`.
pub fn ball_density_profile(
    w: &WeightDensity,
    r: f64,
    exponent: f64,
    ladder: &[C64],
    params: &NormParams,
) -> Result<DensityProfile> {
    let points = ladder
        .par_iter()
        .map(|&a| {
            let m = ball_measure(w, BergmanBall::new(a, r)?, params)?;
            let scale = 1.0 - a.norm_sqr();
            Ok(ProfilePoint {
                scale,
                density: m / scale.powf(exponent),
                region_id: format!("a={:.12e}{:+.12e}i", a.re, a.im),
                tail_estimate: 0.0,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    DensityProfile::new(points)
}
