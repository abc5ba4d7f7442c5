use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::{bergman_norm, bergman_test_fn, check_alpha, check_p, hardy_norm, DiskFunction, Kernel, NormParams};
use crate::error::{Error, Result};
use crate::operators::OperatorSpec;
use crate::series::{PowerSeries, C64};

/// Largest degree of the random probe polynomials.
pub const PROBE_DEGREE: usize = 32;
/// Test-function ladder `|a| = 1 - 2^{-u}`, `u = 1..=KERNEL_LADDER`.
pub const KERNEL_LADDER: i32 = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Space {
    Hardy { p: f64 },
    Bergman { p: f64, alpha: f64 },
}

impl Space {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Space::Hardy { p } => check_p(p),
            Space::Bergman { p, alpha } => {
                check_p(p)?;
                check_alpha(alpha)
            }
        }
    }

    pub fn p(&self) -> f64 {
        match *self {
            Space::Hardy { p } | Space::Bergman { p, .. } => p,
        }
    }

    pub fn norm(&self, f: &(impl DiskFunction + ?Sized), params: &NormParams) -> Result<f64> {
        Ok(match *self {
            Space::Hardy { p } => hardy_norm(f, p, params)?.value,
            Space::Bergman { p, alpha } => bergman_norm(f, p, alpha, params)?.value,
        })
    }

    /// Normalized test function centred at `a`.
    pub fn test_kernel(&self, a: C64, params: &NormParams) -> Result<Kernel> {
        match *self {
            Space::Hardy { p } => Kernel::hardy(a, p),
            Space::Bergman { p, alpha } => Ok(bergman_test_fn(a, p, alpha, 0, params)?.normalized),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormProbe {
    /// Largest observed `||T f|| / ||f||`.
    pub lower_bound: f64,
    /// Label of the probe attaining the bound.
    pub best: String,
    /// Every probe with its ratio, in probe order.
    pub ratios: Vec<(String, f64)>,
}

fn random_polynomial(rng: &mut ChaCha8Rng) -> PowerSeries {
    let degree = rng.gen_range(1..=PROBE_DEGREE);
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

/// Lower bound for the operator norm of `op` on `space`, from `f = 1`,
/// `trials` seeded random polynomials and a ladder of test functions.
pub fn operator_norm_lower(
    op: &OperatorSpec,
    space: Space,
    trials: usize,
    seed: u64,
    params: &NormParams,
) -> Result<NormProbe> {
    op.validate()?;
    space.validate()?;
    params.validate()?;
    if trials < 1 {
        return Err(Error::param("need at least one probe trial"));
    }
    let mut probes: Vec<(String, PowerSeries)> = vec![("one".into(), PowerSeries::constant(C64::new(1.0, 0.0)))];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..trials {
        probes.push((format!("poly#{i}"), random_polynomial(&mut rng)));
    }
    for u in 1..=KERNEL_LADDER {
        let a = C64::new(1.0 - (-(u as f64)).exp2(), 0.0);
        let k = space.test_kernel(a, params)?;
        let degree = ((40.0 / (1.0 - a.re)).ceil() as usize).max(16);
        probes.push((format!("kernel u={u}"), k.series(degree)));
    }

    let ratios = probes
        .par_iter()
        .map(|(label, f)| {
            let image = op.image(f, params.degree)?;
            let ratio = space.norm(&image, params)? / space.norm(f, params)?;
            Ok((label.clone(), ratio))
        })
        .collect::<Result<Vec<_>>>()?;
    let (best, lower_bound) = ratios
        .iter()
        .fold(("one".to_string(), f64::NEG_INFINITY), |acc, (l, r)| {
            if *r > acc.1 {
                (l.clone(), *r)
            } else {
                acc
            }
        });
    Ok(NormProbe {
        lower_bound,
        best,
        ratios,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::SymbolSpec;

    #[test]
    fn integration_powers_are_sharp_at_one() {
        let params = NormParams::default();
        let mut fact = 1.0;
        for k in 1..=5 {
            fact *= k as f64;
            let probe = operator_norm_lower(
                &OperatorSpec::integration(k).unwrap(),
                Space::Hardy { p: 2.0 },
                40,
                7,
                &params,
            )
            .unwrap();
            assert!((probe.ratios[0].1 - 1.0 / fact).abs() < 1e-12);
            assert!(probe.lower_bound <= (1.0 + 1e-6) / fact, "k={k}: {}", probe.best);
            assert!((probe.lower_bound - 1.0 / fact).abs() < 1e-12);
        }
    }

    #[test]
    fn deterministic_for_seed() {
        let params = NormParams::default();
        let op = OperatorSpec::new(SymbolSpec::monomial(2), 2).unwrap();
        let a = operator_norm_lower(&op, Space::Hardy { p: 3.0 }, 10, 42, &params).unwrap();
        let b = operator_norm_lower(&op, Space::Hardy { p: 3.0 }, 10, 42, &params).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn log_symbol_second_order_is_finite() {
        let params = NormParams::default();
        let op = OperatorSpec::new(SymbolSpec::LogOneMinusZ, 2).unwrap();
        let probe = operator_norm_lower(&op, Space::Hardy { p: 2.0 }, 20, 1, &params).unwrap();
        assert!(probe.lower_bound.is_finite() && probe.lower_bound > 0.0);
        assert!(probe.ratios.iter().all(|(_, r)| *r < 2.0));
    }
}
