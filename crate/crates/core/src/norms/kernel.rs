use super::{bergman_norm, check_alpha, check_p, DiskFunction, NormParams};
use crate::error::{Error, Result};
use crate::series::{binomial_series, PowerSeries, C64};

/// `scale * (1 - conj(a) z)^{-power}`, evaluated in closed form. Analytic on
/// a neighbourhood of the closed disk whenever `|a| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kernel {
    a: C64,
    power: f64,
    scale: f64,
}

fn check_center(a: C64) -> Result<()> {
    if a.norm() < 1.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("test point {a} must satisfy |a| < 1")))
    }
}

impl Kernel {
    pub fn new(a: C64, power: f64, scale: f64) -> Result<Self> {
        check_center(a)?;
        Ok(Self { a, power, scale })
    }

    /// `k_a = ((1 - |a|^2)/(1 - conj(a) z)^2)^{1/p}`.
    pub fn hardy(a: C64, p: f64) -> Result<Self> {
        check_p(p)?;
        check_center(a)?;
        Ok(Self {
            a,
            power: 2.0 / p,
            scale: (1.0 - a.norm_sqr()).powf(1.0 / p),
        })
    }

    /// `K_a = (1 - conj(a) z)^{-(2 + alpha)}`.
    pub fn bergman(a: C64, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        check_center(a)?;
        Ok(Self {
            a,
            power: 2.0 + alpha,
            scale: 1.0,
        })
    }

    pub fn center(&self) -> C64 {
        self.a
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            scale: self.scale * c,
            ..*self
        }
    }

    pub fn eval(&self, z: C64) -> C64 {
        let w = C64::new(1.0, 0.0) - self.a.conj() * z;
        w.powf(-self.power) * self.scale
    }

    /// Taylor coefficients up to degree `n`: `scale * c_m(power) conj(a)^m`.
    pub fn series(&self, n: usize) -> PowerSeries {
        let ac = self.a.conj();
        let mut pow = C64::new(self.scale, 0.0);
        let coeffs = binomial_series(self.power, n)
            .into_iter()
            .map(|c| {
                let v = c * pow;
                pow *= ac;
                v
            })
            .collect();
        if self.a == C64::new(0.0, 0.0) {
            PowerSeries::from_coeffs(vec![C64::new(self.scale, 0.0)]).expect("finite scale")
        } else {
            PowerSeries::truncation(coeffs).expect("finite coefficients")
        }
    }
}

impl DiskFunction for Kernel {
    fn ring(&self, r: f64, m: usize) -> Vec<C64> {
        let step = std::f64::consts::TAU / m as f64;
        (0..m).map(|j| self.eval(C64::from_polar(r, step * j as f64))).collect()
    }

    fn ring_resolution(&self, r: f64) -> usize {
        let q = self.a.norm() * r;
        if q == 0.0 {
            return 16;
        }
        ((40.0 / (1.0 - q)).ceil() as usize).next_power_of_two().max(16)
    }

    fn closed_disk(&self) -> bool {
        true
    }

    fn boundary_scale(&self) -> f64 {
        (1.0 - self.a.norm()).max(f64::EPSILON)
    }

    /// For even integer `p`, `|K|^p = |(1 - conj(a) z)^{-power p/2}|^2` and
    /// Parseval applies to the binomial coefficients.
    fn exact_mean_power(&self, r: f64, p: f64) -> Option<f64> {
        if p.fract() != 0.0 || !(p as u64).is_multiple_of(2) {
            return None;
        }
        let gamma = self.power * p / 2.0;
        let q2 = (self.a.norm() * r).powi(2);
        let mut c = 1.0;
        let mut qp = 1.0;
        let mut sum = 1.0;
        for m in 1.. {
            c *= (m as f64 - 1.0 + gamma) / m as f64;
            qp *= q2;
            let term = c * c * qp;
            sum += term;
            if term <= 1e-18 * sum || qp < 1e-250 {
                break;
            }
        }
        Some(self.scale.powf(p) * sum)
    }
}

/// Taylor series of the Hardy test function `k_a` to degree `n`.
pub fn hardy_test_fn(a: C64, p: f64, n: usize) -> Result<PowerSeries> {
    Ok(Kernel::hardy(a, p)?.series(n))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BergmanTestFn {
    /// `K_a`.
    pub raw: Kernel,
    /// `K_a / ||K_a||_{A^p_alpha}`.
    pub normalized: Kernel,
    pub kernel_norm: f64,
    /// Taylor series of the normalized kernel.
    pub series: PowerSeries,
}

pub fn bergman_test_fn(a: C64, p: f64, alpha: f64, n: usize, params: &NormParams) -> Result<BergmanTestFn> {
    check_p(p)?;
    let raw = Kernel::bergman(a, alpha)?;
    let kernel_norm = bergman_norm(&raw, p, alpha, params)?.value;
    let normalized = raw.scaled(1.0 / kernel_norm);
    Ok(BergmanTestFn {
        raw,
        normalized,
        kernel_norm,
        series: normalized.series(n),
    })
}
