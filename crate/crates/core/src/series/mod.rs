//! Truncated Taylor series at the origin.
//!
//! A [`PowerSeries`] stores `c_0..c_N` together with a flag telling whether
//! the coefficients describe a polynomial exactly or are the truncation of an
//! infinite series. All operator actions in this crate are coefficient maps
//! on this type; no path quadrature is ever performed.

mod coeff_file;
pub(crate) mod fft;
mod symbol;

pub use coeff_file::{parse_coefficients, read_coefficients, write_coefficients};
pub(crate) use symbol::binomial_series;
pub use symbol::SymbolSpec;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);

/// Absolute tolerance used for coefficient equality of unit-scale inputs.
pub const COEFF_TOL: f64 = 1e-12;
/// Powers `r^m` below this are dropped from sums; this also keeps the
/// running power out of the subnormal range.
pub(crate) const NEGLIGIBLE_POWER: f64 = 1e-250;

/// Largest product size handled by the schoolbook Cauchy product.
const NAIVE_PRODUCT_LIMIT: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<C64>,
    exact: bool,
}

impl PowerSeries {
    /// A polynomial given exactly by `coeffs`.
    pub fn from_coeffs(coeffs: Vec<C64>) -> Result<Self> {
        Self::build(coeffs, true)
    }

    /// The degree-`N` truncation of an infinite series.
    pub fn truncation(coeffs: Vec<C64>) -> Result<Self> {
        Self::build(coeffs, false)
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::from_coeffs(coeffs.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    fn build(coeffs: Vec<C64>, exact: bool) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::param("a power series needs at least one coefficient"));
        }
        if let Some(m) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::param(format!("coefficient {m} is not finite")));
        }
        Ok(Self { coeffs, exact })
    }

    // Internal constructor for results of arithmetic on valid series.
    fn raw(coeffs: Vec<C64>, exact: bool) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs, exact }
    }

    pub fn zero(degree: usize) -> Self {
        Self::raw(vec![ZERO; degree + 1], true)
    }

    pub fn constant(c: C64) -> Self {
        Self::raw(vec![c], true)
    }

    /// `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![ZERO; k + 1];
        coeffs[k] = C64::new(1.0, 0.0);
        Self::raw(coeffs, true)
    }

    /// Truncation degree `N`; the series holds `N + 1` coefficients.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> C64 {
        self.coeffs.get(m).copied().unwrap_or(ZERO)
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// True when the series is a polynomial, or a truncation whose last
    /// eighth of coefficients sits below double precision relative to the
    /// largest one. Such a truncation is evaluated on the closed disk.
    pub fn is_polynomial_like(&self) -> bool {
        if self.exact {
            return true;
        }
        let peak = self.max_abs();
        if peak == 0.0 {
            return true;
        }
        let n = self.degree();
        let start = (7 * n / 8 + 1).min(n);
        self.coeffs[start..].iter().all(|c| c.norm() <= 1e-16 * peak)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// Largest coefficient deviation after padding the shorter series with zeros.
    pub fn max_abs_diff(&self, other: &PowerSeries) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).fold(0.0, |m, i| m.max((self.coeff(i) - other.coeff(i)).norm()))
    }

    pub fn coeff_eq(&self, other: &PowerSeries, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    pub fn scale(&self, c: C64) -> PowerSeries {
        Self::raw(self.coeffs.iter().map(|x| x * c).collect(), self.exact)
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::raw(coeffs, self.exact && other.exact)
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: usize) -> PowerSeries {
        let mut coeffs = vec![ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self::raw(coeffs, self.exact)
    }

    /// Keep coefficients `0..=n`, padding with zeros if the series is shorter.
    pub fn truncate(&self, n: usize) -> PowerSeries {
        let dropped_nonzero = self.coeffs.iter().skip(n + 1).any(|c| *c != ZERO);
        let mut coeffs: Vec<C64> = self.coeffs.iter().take(n + 1).copied().collect();
        coeffs.resize(n + 1, ZERO);
        Self::raw(coeffs, self.exact && !dropped_nonzero)
    }

    /// Horner evaluation at `z` with `|z| <= 1`.
    pub fn eval(&self, z: C64) -> Result<C64> {
        if z.norm() > 1.0 + 1e-12 {
            return Err(Error::domain(format!(
                "|z| = {} lies outside the closed unit disk",
                z.norm()
            )));
        }
        Ok(self.horner(z))
    }

    pub(crate) fn horner(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
    }

    /// Values `f(r e^{2 pi i j/M})`, `j = 0..M`, via one inverse FFT of the
    /// radially scaled coefficients. `M` must be a power of two with
    /// `M >= 2(N + 1)`.
    pub fn circle_samples(&self, r: f64, m: usize) -> Result<Vec<C64>> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::domain(format!("sampling radius {r} outside [0, 1]")));
        }
        if !m.is_power_of_two() || m < 2 * (self.degree() + 1) {
            return Err(Error::param(format!(
                "sample count {m} must be a power of two at least {}",
                2 * (self.degree() + 1)
            )));
        }
        Ok(self.ring_values(r, m))
    }

    /// Same as [`circle_samples`](Self::circle_samples) for any power of two
    /// `m`; coefficients are aliased modulo `m`, which is exact evaluation at
    /// the `m`-th roots of unity.
    pub fn ring_values(&self, r: f64, m: usize) -> Vec<C64> {
        debug_assert!(m.is_power_of_two());
        let mut buf = vec![ZERO; m];
        let mut rp = 1.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            if rp < NEGLIGIBLE_POWER {
                break;
            }
            buf[j & (m - 1)] += c * rp;
            rp *= r;
        }
        fft::inverse(&mut buf);
        buf
    }

    pub fn derivative(&self) -> PowerSeries {
        if self.coeffs.len() == 1 {
            return Self::raw(vec![ZERO], self.exact);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, c)| c * m as f64)
            .collect();
        Self::raw(coeffs, self.exact)
    }

    pub fn nth_derivative(&self, n: usize) -> PowerSeries {
        (0..n).fold(self.clone(), |acc, _| acc.derivative())
    }

    /// Truncated Cauchy product `out_m = sum_{j<=m} f_j g_{m-j}`, `m <= n_out`.
    pub fn multiply(&self, other: &PowerSeries, n_out: usize) -> PowerSeries {
        let len = n_out + 1;
        let a = &self.coeffs[..self.coeffs.len().min(len)];
        let b = &other.coeffs[..other.coeffs.len().min(len)];
        let coeffs = if a.len().min(b.len()) <= 32 || a.len() * b.len() <= NAIVE_PRODUCT_LIMIT {
            cauchy_naive(a, b, len)
        } else {
            fft::convolve(a, b, len)
        };
        let exact = self.exact && other.exact && n_out >= self.degree() + other.degree();
        Self::raw(coeffs, exact)
    }

    /// `k`-fold integration from the origin: `z^m -> z^{m+k} m!/(m+k)!`.
    pub fn integrate_k(&self, k: usize) -> Result<PowerSeries> {
        if k < 1 {
            return Err(Error::param("integration order k must be at least 1"));
        }
        let mut coeffs = vec![ZERO; self.coeffs.len() + k];
        for (m, c) in self.coeffs.iter().enumerate() {
            coeffs[m + k] = c * factorial_ratio(m, k);
        }
        Ok(Self::raw(coeffs, self.exact))
    }
}

/// `m!/(m+k)! = prod_{j=1..k} 1/(m+j)`.
pub fn factorial_ratio(m: usize, k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc / (m + j) as f64)
}

fn cauchy_naive(a: &[C64], b: &[C64], len: usize) -> Vec<C64> {
    let mut out = vec![ZERO; len];
    for (i, x) in a.iter().enumerate() {
        if *x == ZERO {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(c: &[f64]) -> PowerSeries {
        PowerSeries::from_real(c).unwrap()
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(PowerSeries::from_coeffs(vec![]).is_err());
        assert!(PowerSeries::from_real(&[1.0, f64::NAN]).is_err());
        assert!(PowerSeries::truncation(vec![c(f64::INFINITY, 0.0)]).is_err());
    }

    #[test]
    fn eval_examples() {
        let log = real(&[0.0, 1.0, 0.5, 1.0 / 3.0]);
        assert_eq!(log.eval(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        let geo = real(&[1.0, 1.0, 1.0, 1.0]);
        assert!((geo.eval(c(0.5, 0.0)).unwrap() - c(1.875, 0.0)).norm() < 1e-15);
        assert!(matches!(geo.eval(c(1.0, 0.5)), Err(Error::Domain(_))));
    }

    #[test]
    fn circle_samples_examples() {
        let id = real(&[0.0, 1.0]);
        let s = id.circle_samples(1.0, 4).unwrap();
        let want = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        for (got, want) in s.iter().zip(want) {
            assert!((got - want).norm() < 1e-15);
        }
        let one = real(&[1.0]);
        assert!(one
            .circle_samples(0.3, 8)
            .unwrap()
            .iter()
            .all(|v| (v - c(1.0, 0.0)).norm() < 1e-15));
        let geo = real(&[1.0, 1.0, 1.0, 1.0]);
        assert!((geo.circle_samples(0.5, 8).unwrap()[0] - c(1.875, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn circle_samples_rejects_bad_counts() {
        let geo = real(&[1.0, 1.0, 1.0, 1.0]);
        assert!(matches!(geo.circle_samples(0.5, 6), Err(Error::Parameter(_))));
        assert!(matches!(geo.circle_samples(0.5, 4), Err(Error::Parameter(_))));
        assert!(matches!(geo.circle_samples(1.5, 8), Err(Error::Domain(_))));
    }

    #[test]
    fn derivative_examples() {
        let log = real(&[0.0, 1.0, 0.5, 1.0 / 3.0]);
        assert!(log.derivative().coeff_eq(&real(&[1.0, 1.0, 1.0]), 1e-15));
        assert_eq!(real(&[4.0]).derivative(), real(&[0.0]));
        assert_eq!(real(&[0.0, 0.0, 1.0]).nth_derivative(2), real(&[2.0]));
    }

    #[test]
    fn multiply_examples() {
        let g = real(&[3.0, -1.0, 2.0, 5.0]);
        assert_eq!(real(&[1.0]).multiply(&g, 2).coeffs(), real(&[3.0, -1.0, 2.0]).coeffs());
        assert_eq!(
            real(&[0.0, 1.0]).multiply(&real(&[0.0, 1.0]), 2),
            real(&[0.0, 0.0, 1.0])
        );
        assert_eq!(
            real(&[1.0, 1.0]).multiply(&real(&[1.0, -1.0]), 2),
            real(&[1.0, 0.0, -1.0])
        );
    }

    #[test]
    fn fft_product_matches_schoolbook() {
        let a: Vec<C64> = (0..700)
            .map(|m| c((m as f64 * 0.37).sin(), (m as f64 * 0.11).cos()))
            .collect();
        let b: Vec<C64> = (0..500)
            .map(|m| c(1.0 / (m + 1) as f64, (m as f64).sqrt().sin()))
            .collect();
        let fast = fft::convolve(&a, &b, 900);
        let slow = cauchy_naive(&a, &b, 900);
        let err = fast.iter().zip(&slow).fold(0.0f64, |m, (x, y)| m.max((x - y).norm()));
        assert!(err < 1e-11, "{err}");
    }

    #[test]
    fn integrate_examples() {
        assert!(real(&[1.0])
            .integrate_k(3)
            .unwrap()
            .coeff_eq(&real(&[0.0, 0.0, 0.0, 1.0 / 6.0]), 1e-16));
        assert!(real(&[0.0, 1.0])
            .integrate_k(1)
            .unwrap()
            .coeff_eq(&real(&[0.0, 0.0, 0.5]), 1e-16));
        assert!(matches!(real(&[1.0]).integrate_k(0), Err(Error::Parameter(_))));
    }

    #[test]
    fn factorial_ratio_survives_large_indices() {
        let r = factorial_ratio(10_000, 20);
        assert!(r > 0.0 && r.is_finite());
        assert!((factorial_ratio(3, 2) - 1.0 / 20.0).abs() < 1e-17);
    }

    #[test]
    fn exactness_bookkeeping() {
        let p = real(&[1.0, 2.0]);
        assert!(p.multiply(&p, 2).is_exact());
        assert!(!p.multiply(&p, 1).is_exact());
        assert!(p.truncate(5).is_exact());
        let t = PowerSeries::truncation(vec![c(1.0, 0.0); 64]).unwrap();
        assert!(!t.is_polynomial_like());
        let mut decaying: Vec<C64> = (0..64).map(|m| c(0.1f64.powi(m), 0.0)).collect();
        decaying[0] = c(1.0, 0.0);
        assert!(PowerSeries::truncation(decaying).unwrap().is_polynomial_like());
    }
}
