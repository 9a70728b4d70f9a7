//! Independent reference evaluations used only by the unit tests.
//!
//! Everything here is deliberately computed by a different route from the
//! production code: other integral representations, other quadrature
//! rules, and the `statrs` gamma function.

use statrs::function::gamma::gamma as sgamma;
use std::f64::consts::PI;

/// Trapezoidal rule for ∫ f(e^y) e^y dy on [lo, hi].
pub fn trapezoid_log<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, h: f64) -> f64 {
    let n = ((hi - lo) / h).ceil() as usize;
    let h = (hi - lo) / n as f64;
    let mut s = 0.0;
    for k in 0..=n {
        let y = lo + k as f64 * h;
        let w = if k == 0 || k == n { 0.5 } else { 1.0 };
        let x = y.exp();
        s += w * f(x) * x;
    }
    s * h
}

/// Gauss–Legendre with panels refined geometrically toward the left end.
pub fn graded_gl<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, levels: usize, uniform_step: f64) -> f64 {
    let (x, w) = crate::quad::gauss_legendre(20);
    let panel = |lo: f64, hi: f64| -> f64 {
        let c = 0.5 * (lo + hi);
        let h = 0.5 * (hi - lo);
        x.iter()
            .zip(&w)
            .map(|(xi, wi)| wi * f(c + h * xi))
            .sum::<f64>()
            * h
    };
    let first = (a + uniform_step).min(b);
    let mut s = 0.0;
    let mut hi = first;
    for _ in 0..levels {
        let lo = a + 0.5 * (hi - a);
        s += panel(lo, hi);
        hi = lo;
    }
    let n = ((b - first) / uniform_step).ceil() as usize;
    if n > 0 {
        let h = (b - first) / n as f64;
        for k in 0..n {
            s += panel(first + k as f64 * h, first + (k + 1) as f64 * h);
        }
    }
    s
}

/// U(a, b, z) = (1/Γ(a)) ∫ e^{−zs} s^{a−1} (1+s)^{b−a−1} ds, via s = e^y.
pub fn tricomi_u_oracle(a: f64, b: f64, z: f64) -> f64 {
    let lo = -42.0 / a;
    let hi = (900.0 / z).ln();
    let v = trapezoid_log(
        |s| (-z * s).exp() * s.powf(a - 1.0) * (1.0 + s).powf(b - a - 1.0),
        lo,
        hi,
        0.01,
    );
    v / sgamma(a)
}

/// D_ν(z) = √(2/π) e^{z²/4} ∫ e^{−s²/2} s^ν cos(zs − νπ/2) ds, ν > −1.
pub fn parabolic_d_oracle(nu: f64, z: f64) -> f64 {
    let s_max = (2.0 * nu.max(0.0)).sqrt() + 11.0;
    let v = graded_gl(
        |s| (-0.5 * s * s).exp() * s.powf(nu) * (z * s - 0.5 * nu * PI).cos(),
        0.0,
        s_max,
        60,
        0.1,
    );
    (2.0 / PI).sqrt() * (0.25 * z * z).exp() * v
}

/// Accuracy floor of [`parabolic_d_oracle`] from its cancellation.
pub fn parabolic_d_oracle_floor(nu: f64, z: f64) -> f64 {
    1e-14 * (0.25 * z * z).exp() * sgamma(0.5 * (nu + 1.0)) * 2f64.powf(0.5 * nu)
}

/// K_ν(z) = √π (z/2)^ν / Γ(ν+1/2) ∫₁^∞ e^{−zt} (t²−1)^{ν−1/2} dt, ν > −1/2.
pub fn bessel_k_oracle(nu: f64, z: f64) -> f64 {
    let w_max = (60.0 + 20.0 * nu) / z + 10.0;
    let (x, wt) = crate::quad::gauss_legendre(20);
    let f = |w: f64| (-z * w).exp() * w.powf(nu - 0.5) * (w + 2.0).powf(nu - 0.5);
    let panel = |lo: f64, hi: f64| -> f64 {
        let c = 0.5 * (lo + hi);
        let h = 0.5 * (hi - lo);
        x.iter()
            .zip(&wt)
            .map(|(xi, wi)| wi * f(c + h * xi))
            .sum::<f64>()
            * h
    };
    let mut hi: f64 = 1e-14;
    // (w(w+2))^{ν−1/2} ≈ 2^{ν−1/2} w^{ν−1/2} on the first sliver
    let mut s = 2f64.powf(nu - 0.5) * hi.powf(nu + 0.5) / (nu + 0.5);
    let mut lo;
    while hi < w_max {
        lo = hi;
        hi = (hi * 1.3).max(hi + 1e-14);
        let step = 0.5 / z.max(1e-3);
        if hi - lo > step {
            hi = lo + step;
        }
        s += panel(lo, hi);
    }
    PI.sqrt() * (0.5 * z).powf(nu) / sgamma(nu + 0.5) * (-z).exp() * s
}
