//! Coefficient maps for `T_{g,n}`, `V^k` and the reduced operators `A_{k,g}`.
//!
//! Every operator takes an output degree `n_out`; products are truncated
//! before integrating, and the returned series always has degree `n_out`.
//! Coefficients `0..=n_out` are exact for exact inputs, so the three
//! constructions of `T_{g,n}` agree to rounding.

use crate::error::{Error, Result};
use crate::series::{PowerSeries, SymbolSpec, C64};

/// Largest order accepted; binomial rows are built in floating point.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSpec {
    pub symbol: SymbolSpec,
    /// `n >= 1`.
    pub order: usize,
    /// `k` of `A_{k,g}`; unused by `T_{g,n}`.
    pub reduced: usize,
}

impl OperatorSpec {
    pub fn new(symbol: SymbolSpec, order: usize) -> Result<Self> {
        let op = Self {
            symbol,
            order,
            reduced: 0,
        };
        op.validate()?;
        Ok(op)
    }

    /// `V^k`, realised as `T_{z,k}`.
    pub fn integration(k: usize) -> Result<Self> {
        Self::new(SymbolSpec::monomial(1), k)
    }

    pub fn validate(&self) -> Result<()> {
        check_order(self.order)?;
        self.symbol.validate()
    }

    /// `T_{g,n}[f]` up to degree `n_out`, with `g` expanded to degree `n_out`.
    pub fn apply(&self, f: &PowerSeries, n_out: usize) -> Result<PowerSeries> {
        let g = self.symbol.series(n_out.max(1))?;
        t_gn_direct(f, &g, self.order, n_out)
    }
}

impl OperatorSpec {
    /// `T_{g,n}[f]` in full when `g` is a polynomial; otherwise truncated
    /// at degree `max(degree, deg f + n)`.
    pub fn image(&self, f: &PowerSeries, degree: usize) -> Result<PowerSeries> {
        let n_out = match &self.symbol {
            SymbolSpec::Polynomial(c) | SymbolSpec::Explicit(c) => f.degree() + c.len().saturating_sub(2) + self.order,
            _ => degree.max(f.degree() + self.order),
        };
        self.apply(f, n_out)
    }
}

fn check_order(n: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::param("operator order n must be at least 1"));
    }
    if n > MAX_ORDER {
        return Err(Error::param(format!("operator order {n} exceeds {MAX_ORDER}")));
    }
    Ok(())
}

/// `T_{g,1}[f] = int_0^z f g'`.
pub fn t_g1(f: &PowerSeries, g: &PowerSeries, n_out: usize) -> PowerSeries {
    if n_out == 0 {
        return PowerSeries::zero(0);
    }
    let h = f.multiply(&g.derivative(), n_out - 1);
    h.integrate_k(1).expect("order 1 is valid")
}

/// `T_{g,n} = V^{n-1} o T_{g,1}`.
pub fn t_gn_factored(f: &PowerSeries, g: &PowerSeries, n: usize, n_out: usize) -> Result<PowerSeries> {
    check_order(n)?;
    if n_out < n {
        return Ok(PowerSeries::zero(n_out));
    }
    let first = t_g1(f, g, n_out - (n - 1));
    if n == 1 {
        Ok(first)
    } else {
        first.integrate_k(n - 1)
    }
}

/// `T_{g,n} = V^n (f g')`, the convolution form with kernel `(z - t)^{n-1}/(n-1)!`.
pub fn t_gn_direct(f: &PowerSeries, g: &PowerSeries, n: usize, n_out: usize) -> Result<PowerSeries> {
    check_order(n)?;
    if n_out < n {
        return Ok(PowerSeries::zero(n_out));
    }
    f.multiply(&g.derivative(), n_out - n).integrate_k(n)
}

/// `A_{k,g}[f] = int_0^z t^k f g'`.
pub fn a_kg(f: &PowerSeries, g: &PowerSeries, k: usize, n_out: usize) -> PowerSeries {
    if n_out < k + 1 {
        return PowerSeries::zero(n_out);
    }
    let h = f.multiply(&g.derivative(), n_out - 1 - k).shift(k);
    h.integrate_k(1).expect("order 1 is valid")
}

/// `T_{g,n} = 1/(n-1)! sum_k (-1)^k C(n-1,k) z^{n-1-k} A_{k,g}`.
pub fn t_gn_binomial(f: &PowerSeries, g: &PowerSeries, n: usize, n_out: usize) -> Result<PowerSeries> {
    check_order(n)?;
    if n_out < n {
        return Ok(PowerSeries::zero(n_out));
    }
    let row = binomial_row(n - 1);
    let fact: f64 = (1..n).map(|j| j as f64).product();
    let mut acc = PowerSeries::zero(n_out);
    for (k, binom) in row.iter().enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let lift = n - 1 - k;
        let term = a_kg(f, g, k, n_out - lift).shift(lift);
        acc = acc.add(&term.scale(C64::new(sign * binom / fact, 0.0)));
    }
    Ok(acc)
}

/// Row `m` of Pascal's triangle.
pub fn binomial_row(m: usize) -> Vec<f64> {
    let mut row = vec![1.0];
    for _ in 0..m {
        let mut next = vec![1.0; row.len() + 1];
        for j in 1..row.len() {
            next[j] = row[j - 1] + row[j];
        }
        row = next;
    }
    row
}

/// Largest coefficient deviation between `(d/dz)^n T_{g,n}[f]` and `f g'`.
pub fn nth_derivative_identity(f: &PowerSeries, g: &PowerSeries, n: usize) -> Result<f64> {
    check_order(n)?;
    let gp = g.derivative();
    let n_out = f.degree() + gp.degree() + n;
    let lhs = t_gn_direct(f, g, n, n_out)?.nth_derivative(n);
    let rhs = f.multiply(&gp, n_out - n);
    Ok(lhs.max_abs_diff(&rhs))
}
