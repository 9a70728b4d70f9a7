//! Small quadrature toolbox shared by the special-function kernels, the
//! Fourier-inversion oracle and the moment diagnostics.

use std::f64::consts::PI;
use std::sync::OnceLock;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, 0.0);
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// The 16-point rule, computed once.
pub fn gl16() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(16))
}

/// Gauss–Legendre 16-point integral of `f` over `[a, b]`.
pub fn gl16_panel<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64) -> f64 {
    let (x, w) = gl16();
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut s = 0.0;
    for (xi, wi) in x.iter().zip(w) {
        s += wi * f(c + h * xi);
    }
    s * h
}

/// Composite 16-point Gauss–Legendre over `[a, b]` split into `panels` pieces.
pub fn gl16_composite<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|k| gl16_panel(&mut f, a + k as f64 * h, a + (k + 1) as f64 * h))
        .sum()
}

/// Double-exponential (exp-sinh) quadrature of `f` over (0, ∞).
///
/// Handles integrable algebraic singularities at the origin and any
/// decay at infinity that is at least algebraic. Returns the integral and
/// the difference between the last two refinement levels.
pub fn exp_sinh<F: FnMut(f64) -> f64>(mut f: F, rel_tol: f64) -> (f64, f64) {
    let (tau_lo, tau_hi) = (-6.8, 4.5);
    let mut eval = |tau: f64| -> f64 {
        let s = (0.5 * PI * tau.sinh()).exp();
        if s == 0.0 || !s.is_finite() {
            return 0.0;
        }
        let w = s * 0.5 * PI * tau.cosh();
        let v = f(s) * w;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };

    let mut h = 0.5;
    let (k_lo, k_hi) = ((tau_lo / h) as i64, (tau_hi / h) as i64);
    let mut sum: f64 = (k_lo..=k_hi).map(|k| eval(k as f64 * h)).sum();
    let mut estimate = sum * h;
    let mut err = f64::INFINITY;
    for _ in 0..8 {
        h *= 0.5;
        let (lo, hi) = ((tau_lo / h) as i64, (tau_hi / h) as i64);
        let mut k = lo;
        if k % 2 == 0 {
            k += 1;
        }
        while k <= hi {
            sum += eval(k as f64 * h);
            k += 2;
        }
        let next = sum * h;
        err = (next - estimate).abs();
        estimate = next;
        if err <= rel_tol * estimate.abs() {
            break;
        }
    }
    (estimate, err)
}

/// Wynn epsilon extrapolation of a sequence of partial sums.
#[derive(Debug, Clone)]
pub struct WynnEpsilon {
    diag: Vec<f64>,
    history: Vec<f64>,
    pub estimate: f64,
    pub error: f64,
}

impl Default for WynnEpsilon {
    fn default() -> Self {
        Self::new()
    }
}

impl WynnEpsilon {
    pub fn new() -> Self {
        Self {
            diag: Vec::new(),
            history: Vec::new(),
            estimate: 0.0,
            error: f64::INFINITY,
        }
    }

    /// Feeds the next partial sum and returns the current extrapolated limit.
    pub fn push(&mut self, partial: f64) -> f64 {
        let mut next = Vec::with_capacity(self.diag.len() + 1);
        next.push(partial);
        for k in 0..self.diag.len() {
            let below = if k == 0 { 0.0 } else { self.diag[k - 1] };
            let diff = next[k] - self.diag[k];
            if diff == 0.0 || !diff.is_finite() {
                break;
            }
            let v = below + 1.0 / diff;
            if !v.is_finite() {
                break;
            }
            next.push(v);
        }
        self.diag = next;
        // even columns carry the extrapolated limits
        let top = (self.diag.len() - 1) & !1;
        let value = self.diag[top];
        self.history.push(value);
        let n = self.history.len();
        if n >= 3 {
            let h = &self.history[n - 3..];
            self.error = (h[2] - h[1]).abs().max((h[2] - h[0]).abs());
        }
        self.estimate = value;
        value
    }

    pub fn len(&self) -> usize {
        self.history.len()
    }

    pub fn is_empty(&self) -> bool {
        self.history.is_empty()
    }
}

/// Simpson integration over uniformly sampled values (odd length).
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    assert!(
        n >= 3 && n % 2 == 1,
        "simpson needs an odd number of samples"
    );
    let mut s = values[0] + values[n - 1];
    for (i, v) in values.iter().enumerate().take(n - 1).skip(1) {
        s += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    s * h / 3.0
}
