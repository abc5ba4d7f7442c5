use std::cell::RefCell;

use rustfft::FftPlanner;

use super::C64;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Unnormalized forward transform, `X_k = sum_j x_j e^{-2 pi i jk/n}`.
pub(crate) fn forward(buf: &mut [C64]) {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(buf.len()).process(buf));
}

/// Unnormalized inverse transform, `x_k = sum_j X_j e^{+2 pi i jk/n}`.
pub(crate) fn inverse(buf: &mut [C64]) {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(buf.len()).process(buf));
}

/// Linear convolution of `a` and `b`, keeping the first `len` outputs.
pub(crate) fn convolve(a: &[C64], b: &[C64], len: usize) -> Vec<C64> {
    let full = a.len() + b.len() - 1;
    let size = full.next_power_of_two();
    let mut fa = vec![C64::new(0.0, 0.0); size];
    let mut fb = vec![C64::new(0.0, 0.0); size];
    fa[..a.len()].copy_from_slice(a);
    fb[..b.len()].copy_from_slice(b);
    forward(&mut fa);
    forward(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= *y;
    }
    inverse(&mut fa);
    let scale = 1.0 / size as f64;
    let mut out: Vec<C64> = fa.into_iter().take(len.min(full)).map(|x| x * scale).collect();
    out.resize(len, C64::new(0.0, 0.0));
    out
}
