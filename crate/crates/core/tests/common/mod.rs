//! Invariant checks shared by the property suite and the acceptance target.
//! Each check returns `Err` with a description on violation.

#![allow(dead_code)]

use std::f64::consts::PI;

use volterra_core::carleson::{
    ball_measure, box_density_profile, box_measure, region_measure, BergmanBall, CarlesonBox, PolarRegion,
    WeightDensity,
};
use volterra_core::norms::{
    bergman_norm, bloch_seminorm, bp_seminorm, hardy_norm, integral_mean, sup_grid_radii, Kernel, NormParams,
};
use volterra_core::operators::{t_gn_binomial, t_gn_direct, t_gn_factored};
use volterra_core::{PowerSeries, SymbolSpec, C64};

pub type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn series(coeffs: &[(f64, f64)]) -> PowerSeries {
    PowerSeries::from_coeffs(coeffs.iter().map(|&(a, b)| C64::new(a, b)).collect()).unwrap()
}

fn rel_dev(a: &PowerSeries, b: &PowerSeries) -> f64 {
    a.max_abs_diff(b) / a.max_abs().max(1.0)
}

pub fn integrate_linearity(f: &PowerSeries, g: &PowerSeries, a: C64, b: C64, k: usize) -> Check {
    let lhs = f.scale(a).add(&g.scale(b)).integrate_k(k).unwrap();
    let rhs = f
        .integrate_k(k)
        .unwrap()
        .scale(a)
        .add(&g.integrate_k(k).unwrap().scale(b));
    let d = rel_dev(&lhs, &rhs);
    ensure(d <= 1e-14, || format!("integrate linearity deviation {d:e} (k={k})"))
}

pub fn integrate_semigroup(f: &PowerSeries, j: usize, k: usize) -> Check {
    let twice = f.integrate_k(j).unwrap().integrate_k(k).unwrap();
    let once = f.integrate_k(j + k).unwrap();
    let d = rel_dev(&once, &twice);
    ensure(d <= 1e-13, || format!("semigroup deviation {d:e} (j={j}, k={k})"))
}

pub fn derivative_inverts_integral(f: &PowerSeries) -> Check {
    let back = f.integrate_k(1).unwrap().derivative();
    let d = rel_dev(f, &back.truncate(f.degree()));
    ensure(d <= 1e-14, || format!("derivative of integral deviates by {d:e}"))
}

pub fn circle_samples_consistent(f: &PowerSeries, r: f64) -> Check {
    let m = (2 * (f.degree() + 1)).next_power_of_two();
    let coarse = f.circle_samples(r, m).unwrap();
    let fine = f.circle_samples(r, 2 * m).unwrap();
    let scale = f.coeffs().iter().map(|c| c.norm()).sum::<f64>().max(1.0);
    for (j, v) in coarse.iter().enumerate() {
        let z = C64::from_polar(r, 2.0 * PI * j as f64 / m as f64);
        let e = f.eval(z).unwrap();
        let d = (v - fine[2 * j]).norm().max((v - e).norm()) / scale;
        ensure(d <= 1e-12, || {
            format!("circle sample {j} of {m} at r={r} deviates by {d:e}")
        })?;
    }
    Ok(())
}

pub fn triple_agreement(f: &PowerSeries, g: &PowerSeries, n: usize) -> Check {
    let n_out = f.degree() + g.degree() + n;
    let d = t_gn_direct(f, g, n, n_out).unwrap();
    let fa = t_gn_factored(f, g, n, n_out).unwrap();
    let b = t_gn_binomial(f, g, n, n_out).unwrap();
    let dev = rel_dev(&d, &fa).max(rel_dev(&d, &b));
    ensure(dev <= 1e-12, || format!("triple agreement deviation {dev:e} (n={n})"))
}

pub fn vanishing_jet(f: &PowerSeries, g: &PowerSeries, n: usize) -> Check {
    let t = t_gn_direct(f, g, n, f.degree() + g.degree() + n).unwrap();
    for (m, c) in t.coeffs()[..n].iter().enumerate() {
        ensure(*c == C64::new(0.0, 0.0), || {
            format!("coefficient {m} of T_(g,{n}) f is {c}")
        })?;
    }
    Ok(())
}

pub fn derivative_recursion(f: &PowerSeries, g: &PowerSeries, n: usize) -> Check {
    let n_out = f.degree() + g.degree() + n;
    let upper = t_gn_direct(f, g, n, n_out).unwrap().derivative();
    let lower = t_gn_direct(f, g, n - 1, n_out - 1).unwrap();
    let d = rel_dev(&lower, &upper);
    ensure(d <= 1e-12, || format!("derivative recursion deviation {d:e} (n={n})"))
}

pub fn operator_linearity(f1: &PowerSeries, f2: &PowerSeries, g: &PowerSeries, c: C64, n: usize) -> Check {
    let n_out = f1.degree().max(f2.degree()) + g.degree() + n;
    let lhs = t_gn_direct(&f1.add(&f2.scale(c)), g, n, n_out).unwrap();
    let rhs = t_gn_direct(f1, g, n, n_out)
        .unwrap()
        .add(&t_gn_direct(f2, g, n, n_out).unwrap().scale(c));
    let d = rel_dev(&lhs, &rhs);
    ensure(d <= 1e-12, || format!("linearity in f deviation {d:e}"))
}

pub fn monotone_means(f: &PowerSeries, r1: f64, r2: f64, p: f64) -> Check {
    let (lo, hi) = (r1.min(r2), r1.max(r2));
    let a = integral_mean(f, lo, p, 64).unwrap();
    let b = integral_mean(f, hi, p, 64).unwrap();
    ensure(a <= b + 1e-10 * b.max(1.0), || {
        format!("M_{p}({lo}) = {a} > M_{p}({hi}) = {b}")
    })
}

pub fn jensen(f: &PowerSeries, r: f64, p1: f64, p2: f64) -> Check {
    let (lo, hi) = (p1.min(p2), p1.max(p2));
    let a = integral_mean(f, r, lo, 64).unwrap();
    let b = integral_mean(f, r, hi, 64).unwrap();
    ensure(a <= b + 1e-10 * b.max(1.0), || {
        format!("M_{lo} = {a} > M_{hi} = {b} at r={r}")
    })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

pub fn homogeneity(f: &PowerSeries, c: C64, p: f64) -> Check {
    let params = NormParams::default();
    let cf = f.scale(c);
    let k = c.norm();
    let pairs = [
        (
            "hardy",
            hardy_norm(f, p, &params).unwrap().value,
            hardy_norm(&cf, p, &params).unwrap().value,
        ),
        (
            "bergman",
            bergman_norm(f, p, 0.0, &params).unwrap().value,
            bergman_norm(&cf, p, 0.0, &params).unwrap().value,
        ),
        (
            "bloch",
            bloch_seminorm(f, &params).value,
            bloch_seminorm(&cf, &params).value,
        ),
        (
            "bp",
            bp_seminorm(f, p, &params).unwrap().sup.value,
            bp_seminorm(&cf, p, &params).unwrap().sup.value,
        ),
    ];
    for (name, base, scaled) in pairs {
        ensure(close(scaled, k * base, 1e-10), || {
            format!("{name}: N(cf) = {scaled}, |c| N(f) = {}", k * base)
        })?;
    }
    Ok(())
}

pub fn kernel_homogeneity(a: C64, c: f64, p: f64) -> Check {
    let params = NormParams::default();
    let k = Kernel::hardy(a, p).unwrap();
    let h = hardy_norm(&k, p, &params).unwrap().value;
    let hc = hardy_norm(&k.scaled(c), p, &params).unwrap().value;
    ensure(close(hc, c.abs() * h, 1e-10), || {
        format!("kernel hardy norm {hc} vs {}", c.abs() * h)
    })
}

pub fn bp_pointwise_chain(g: &PowerSeries, p: f64) -> Check {
    let params = NormParams::default();
    let bp = bp_seminorm(g, p, &params).unwrap().sup.value;
    let gd = g.derivative();
    for r in sup_grid_radii(params.r_max) {
        let w = 1.0 - r * r;
        let bound = w.powf(1.0 / p) * bp;
        for (j, v) in gd.ring_values(r, params.samples).iter().enumerate() {
            let lhs = w * v.norm();
            ensure(lhs <= bound * (1.0 + 1e-12), || {
                format!("(1-|z|^2)|g'| = {lhs} exceeds {bound} at r={r}, j={j}")
            })?;
        }
    }
    Ok(())
}

pub fn bp_nesting(g: &PowerSeries, p1: f64, p2: f64) -> Check {
    let params = NormParams::default();
    let (lo, hi) = (p1.min(p2), p1.max(p2));
    let a = bp_seminorm(g, lo, &params).unwrap().sup.value;
    let b = bp_seminorm(g, hi, &params).unwrap().sup.value;
    ensure(b <= a * (1.0 + 1e-12), || {
        format!("B_{hi} seminorm {b} exceeds B_{lo} seminorm {a}")
    })
}

/// `T_{g,1}[k_a]` has derivative `k_a g'`, so its Bloch seminorm is at least
/// the value at `a`. Points are placed on the seminorm grid.
pub fn bloch_lower_bound(g: &PowerSeries, u: usize, j: usize, p: f64) -> Check {
    let params = NormParams::default();
    let radii = sup_grid_radii(params.r_max);
    let r = radii[u % radii.len()].min(0.95);
    let a = C64::from_polar(r, 2.0 * PI * (j % params.samples) as f64 / params.samples as f64);
    let k = Kernel::hardy(a, p).unwrap().series(2048);
    let t = t_gn_direct(&k, g, 1, k.degree() + g.degree() + 1).unwrap();
    let lhs = bloch_seminorm(&t, &params).value;
    let w = 1.0 - a.norm_sqr();
    let rhs = w.powf(1.0 - 1.0 / p) * g.derivative().eval(a).unwrap().norm();
    ensure(lhs >= rhs * (1.0 - 1e-6), || {
        format!("Bloch seminorm {lhs} below {rhs} at a={a}")
    })
}

/// Weights used by the measure invariants.
pub fn weight(choice: usize) -> WeightDensity {
    match choice % 6 {
        0 => WeightDensity::radial(0.0),
        1 => WeightDensity::radial(1.0),
        2 => WeightDensity::hardy(SymbolSpec::monomial(1), 1, 2.0),
        3 => WeightDensity::hardy(SymbolSpec::LogOneMinusZ, 2, 2.0),
        4 => WeightDensity::bergman(SymbolSpec::PowDerivative { gamma: 1.5 }, 1, 2.0, 0.0),
        _ => WeightDensity::bergman(SymbolSpec::PowDerivative { gamma: 1.5 }, 2, 2.0, 0.0),
    }
    .unwrap()
}

/// `mu(S(I))` equals the two children boxes plus the slab
/// `[1 - |I|, 1 - |I|/2] x I`.
pub fn box_additivity(w: &WeightDensity, center: f64, level: u32) -> Check {
    let params = NormParams::default();
    let len = (-(level as f64)).exp2();
    let parent = box_measure(w, CarlesonBox::new(center, len).unwrap(), &params)
        .unwrap()
        .value;
    let quarter = PI * len / 2.0;
    let left = box_measure(w, CarlesonBox::new(center - quarter, len / 2.0).unwrap(), &params)
        .unwrap()
        .value;
    let right = box_measure(w, CarlesonBox::new(center + quarter, len / 2.0).unwrap(), &params)
        .unwrap()
        .value;
    let slab = region_measure(
        w,
        PolarRegion {
            r0: 1.0 - len,
            r1: 1.0 - len / 2.0,
            theta0: center - PI * len,
            theta1: center + PI * len,
        },
        &params,
    )
    .unwrap();
    let sum = left + right + slab;
    ensure(close(parent, sum, 1e-6), || {
        format!("box {parent} vs children + slab {sum} (level {level}, centre {center})")
    })
}

pub fn arc_monotonicity(w: &WeightDensity, center: f64, len: f64, grow: f64) -> Check {
    let params = NormParams::default();
    let small = box_measure(w, CarlesonBox::new(center, len).unwrap(), &params)
        .unwrap()
        .value;
    // Keep the inner radius fixed so that only the arc grows.
    let r0 = 1.0 - len;
    let half = (PI * len * grow).min(PI);
    let wide = region_measure(
        w,
        PolarRegion {
            r0,
            r1: params.r_max,
            theta0: center - half,
            theta1: center + half,
        },
        &params,
    )
    .unwrap();
    let bigger = box_measure(w, CarlesonBox::new(center, (len * grow).min(1.0)).unwrap(), &params)
        .unwrap()
        .value;
    ensure(small <= wide * (1.0 + 1e-9) && small <= bigger * (1.0 + 1e-9), || {
        format!("arc growth decreased the measure: {small} -> {wide}, {bigger}")
    })
}

pub fn ball_monotonicity(w: &WeightDensity, a: C64, r: f64, grow: f64) -> Check {
    let params = NormParams::default();
    let small = ball_measure(w, BergmanBall::new(a, r).unwrap(), &params).unwrap();
    let big = ball_measure(w, BergmanBall::new(a, (r * grow).min(0.9)).unwrap(), &params).unwrap();
    ensure(small <= big * (1.0 + 1e-9), || {
        format!("ball growth decreased the measure: {small} -> {big}")
    })
}

pub fn rotation_covariance(t: f64, angle: f64, level: u32) -> Check {
    let params = NormParams::default();
    let w = WeightDensity::radial(t).unwrap();
    let len = (-(level as f64)).exp2();
    let base = box_measure(&w, CarlesonBox::new(0.0, len).unwrap(), &params)
        .unwrap()
        .value;
    let turned = box_measure(&w, CarlesonBox::new(angle, len).unwrap(), &params)
        .unwrap()
        .value;
    ensure(close(base, turned, 1e-8), || {
        format!("radial box {base} vs rotated {turned} (angle {angle})")
    })
}

pub fn envelope_monotone(w: &WeightDensity, levels: u32) -> Check {
    let params = NormParams::default();
    let env = box_density_profile(w, levels, &params).unwrap().envelope();
    for i in 1..env.len() {
        ensure(env[i - 1] >= env[i], || format!("envelope not monotone: {env:?}"))?;
    }
    Ok(())
}

/// `mu_{n'} <= mu_n` for `n' > n` on boxes, balls and pointwise.
pub fn mu_n_domination(symbol: &SymbolSpec, n: usize, extra: usize, q: f64, beta: f64, a: C64, r: f64) -> Check {
    let params = NormParams::default();
    let lo = WeightDensity::bergman(symbol.clone(), n, q, beta).unwrap();
    let hi = WeightDensity::bergman(symbol.clone(), n + extra, q, beta).unwrap();
    for i in 0..16 {
        for j in 0..16 {
            let z = C64::from_polar(params.r_max * i as f64 / 15.0, 2.0 * PI * j as f64 / 16.0 + 0.1);
            ensure(hi.eval(z) <= lo.eval(z), || format!("pointwise mu_(n') > mu_n at {z}"))?;
        }
    }
    let ball = BergmanBall::new(a, r).unwrap();
    let (bl, bh) = (
        ball_measure(&lo, ball, &params).unwrap(),
        ball_measure(&hi, ball, &params).unwrap(),
    );
    ensure(bh <= bl * (1.0 + 1e-9), || format!("ball: mu_(n') {bh} > mu_n {bl}"))?;
    let bx = CarlesonBox::new(a.arg(), (1.0 - a.norm()).max(1.0 / 256.0)).unwrap();
    let (xl, xh) = (
        box_measure(&lo, bx, &params).unwrap().value,
        box_measure(&hi, bx, &params).unwrap().value,
    );
    ensure(xh <= xl * (1.0 + 1e-9), || format!("box: mu_(n') {xh} > mu_n {xl}"))
}
