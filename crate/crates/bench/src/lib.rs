//! Benchmarks live in `benches/`; run them with `cargo bench -p volterra-bench`.

use volterra_core::{PowerSeries, C64};

/// Deterministic unit-scale test series of the given degree.
pub fn sample_series(degree: usize) -> PowerSeries {
    let coeffs = (0..=degree)
        .map(|m| {
            let t = m as f64;
            C64::new((0.7 * t).sin(), (1.3 * t).cos())
        })
        .collect();
    PowerSeries::from_coeffs(coeffs).expect("finite coefficients")
}
