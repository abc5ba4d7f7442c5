use super::{PowerSeries, C64, ZERO};
use crate::error::{Error, Result};

/// Declarative description of a symbol `g`.
#[derive(Debug, Clone, PartialEq)]
pub enum SymbolSpec {
    /// `g(z) = sum c_m z^m`, finitely many terms.
    Polynomial(Vec<C64>),
    /// `g(z) = log 1/(1 - z)`, so `g'(z) = 1/(1 - z)`.
    LogOneMinusZ,
    /// `g(z) = (1 - z)^{-gamma}` on the principal branch.
    PowOneMinusZ { gamma: f64 },
    /// The symbol with `g'(z) = (1 - z)^{-gamma}` and `g(0) = 0`.
    PowDerivative { gamma: f64 },
    /// Coefficients supplied from a coefficient file.
    Explicit(Vec<C64>),
}

impl SymbolSpec {
    /// `g(z) = z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![ZERO; k + 1];
        c[k] = C64::new(1.0, 0.0);
        SymbolSpec::Polynomial(c)
    }

    /// The constant symbol `g = 0`.
    pub fn zero() -> Self {
        SymbolSpec::Polynomial(vec![ZERO])
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SymbolSpec::PowOneMinusZ { gamma } | SymbolSpec::PowDerivative { gamma } => {
                if !(gamma.is_finite() && *gamma > 0.0) {
                    return Err(Error::param(format!("exponent gamma = {gamma} must be positive")));
                }
            }
            SymbolSpec::Polynomial(c) | SymbolSpec::Explicit(c) => {
                PowerSeries::from_coeffs(c.clone())?;
            }
            SymbolSpec::LogOneMinusZ => {}
        }
        Ok(())
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self, SymbolSpec::Polynomial(_) | SymbolSpec::Explicit(_))
    }

    /// True when `g' = 0`, i.e. the operator `T_{g,n}` vanishes.
    pub fn has_zero_derivative(&self) -> bool {
        match self {
            SymbolSpec::Polynomial(c) | SymbolSpec::Explicit(c) => c.iter().skip(1).all(|x| *x == ZERO),
            _ => false,
        }
    }

    /// Taylor coefficients at the origin up to degree `n`. Polynomials of
    /// degree `d <= n` are returned exactly, without zero padding.
    pub fn series(&self, n: usize) -> Result<PowerSeries> {
        self.validate()?;
        match self {
            SymbolSpec::Polynomial(c) | SymbolSpec::Explicit(c) => {
                let p = PowerSeries::from_coeffs(c.clone())?;
                Ok(if p.degree() > n { p.truncate(n) } else { p })
            }
            SymbolSpec::LogOneMinusZ => {
                let c = (0..=n)
                    .map(|m| if m == 0 { ZERO } else { C64::new(1.0 / m as f64, 0.0) })
                    .collect();
                PowerSeries::truncation(c)
            }
            SymbolSpec::PowOneMinusZ { gamma } => PowerSeries::truncation(binomial_series(*gamma, n)),
            SymbolSpec::PowDerivative { gamma } => {
                let d = binomial_series(*gamma, n.saturating_sub(1));
                let mut c = vec![ZERO; n + 1];
                for (m, x) in d.into_iter().enumerate().take(n) {
                    c[m + 1] = x / (m + 1) as f64;
                }
                PowerSeries::truncation(c)
            }
        }
    }

    /// Closed-form `g'(z)` for the named families; Horner on the derivative
    /// polynomial otherwise.
    pub fn derivative_at(&self, z: C64) -> C64 {
        let one = C64::new(1.0, 0.0);
        match self {
            SymbolSpec::Polynomial(c) | SymbolSpec::Explicit(c) => c
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(ZERO, |acc, (m, x)| acc * z + x * m as f64),
            SymbolSpec::LogOneMinusZ => one / (one - z),
            SymbolSpec::PowOneMinusZ { gamma } => (one - z).powf(-gamma - 1.0) * *gamma,
            SymbolSpec::PowDerivative { gamma } => (one - z).powf(-gamma),
        }
    }

    /// `|g'(z)|`, using real arithmetic for the named families.
    pub fn derivative_abs(&self, z: C64) -> f64 {
        let d = (C64::new(1.0, 0.0) - z).norm();
        match self {
            SymbolSpec::LogOneMinusZ => 1.0 / d,
            SymbolSpec::PowOneMinusZ { gamma } => gamma * d.powf(-gamma - 1.0),
            SymbolSpec::PowDerivative { gamma } => d.powf(-gamma),
            _ => self.derivative_at(z).norm(),
        }
    }

    /// `(C, e)` with `|g'(z)| <= C (1 - |z|)^{-e}` on the whole disk.
    pub fn derivative_growth(&self) -> (f64, f64) {
        match self {
            SymbolSpec::Polynomial(c) | SymbolSpec::Explicit(c) => {
                let bound = c.iter().enumerate().map(|(m, x)| m as f64 * x.norm()).sum();
                (bound, 0.0)
            }
            SymbolSpec::LogOneMinusZ => (1.0, 1.0),
            SymbolSpec::PowOneMinusZ { gamma } => (*gamma, gamma + 1.0),
            SymbolSpec::PowDerivative { gamma } => (1.0, *gamma),
        }
    }

    /// Bound on `sum_{m > n} |c_m| r^m`, the part of the symbol dropped by
    /// [`series(n)`](Self::series) at radius `r`. `None` when the bound
    /// diverges.
    pub fn tail_bound(&self, n: usize, r: f64) -> Option<f64> {
        let next = n + 1;
        let rn = r.powi(next as i32);
        // Coefficient c_{n+1}, and rho bounding c_{m+1}/c_m for m > n.
        let (c_next, rho) = match self {
            SymbolSpec::Polynomial(c) | SymbolSpec::Explicit(c) => {
                let mut rp = rn;
                let mut sum = 0.0;
                for x in c.iter().skip(next) {
                    sum += x.norm() * rp;
                    rp *= r;
                }
                return Some(sum);
            }
            SymbolSpec::LogOneMinusZ => {
                return (r < 1.0).then(|| rn / (next as f64 * (1.0 - r)));
            }
            SymbolSpec::PowOneMinusZ { gamma } => {
                let c = binomial_series(*gamma, next)[next].re;
                (c, ((next as f64 + gamma) / (next as f64 + 1.0)).max(1.0))
            }
            SymbolSpec::PowDerivative { gamma } => {
                let c = binomial_series(*gamma, n)[n].re / next as f64;
                (c, ((next as f64 - 1.0 + gamma) / (next as f64 + 1.0)).max(1.0))
            }
        };
        (r * rho < 1.0).then(|| c_next * rn / (1.0 - r * rho))
    }

    /// Boundary angle of the symbol's singularity, if it has one.
    pub fn singular_angle(&self) -> Option<f64> {
        if self.is_polynomial() {
            None
        } else {
            Some(0.0)
        }
    }
}

/// Coefficients of `(1 - z)^{-gamma}`: `c_0 = 1`, `c_m = c_{m-1}(m - 1 + gamma)/m`.
pub(crate) fn binomial_series(gamma: f64, n: usize) -> Vec<C64> {
    let mut c = Vec::with_capacity(n + 1);
    let mut x = 1.0;
    c.push(C64::new(1.0, 0.0));
    for m in 1..=n {
        x *= (m as f64 - 1.0 + gamma) / m as f64;
        c.push(C64::new(x, 0.0));
    }
    c
}
