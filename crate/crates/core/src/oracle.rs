//! Direct Fourier inversion of (multiscale) stable characteristic functions
//! and grid convolution of sampled densities.

use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::profile::DensityProfile;
use crate::quad::gl16;
use crate::stable::StableComponent;

/// Components of ψ(ω) = Σ_j −γ_j |ω|^{α_j} e^{iπβ_j sgn(ω)/2}, sorted by α.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiscaleSpec {
    components: Vec<StableComponent>,
}

impl MultiscaleSpec {
    /// Validates and sorts by α. Equal exponents are allowed.
    pub fn new(mut components: Vec<StableComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidParameter(
                "a spec needs at least one component".into(),
            ));
        }
        for c in &components {
            c.validate()?;
        }
        components.sort_by(|a, b| a.alpha.total_cmp(&b.alpha));
        Ok(Self { components })
    }

    pub fn single(c: StableComponent) -> Result<Self> {
        Self::new(vec![c])
    }

    pub fn components(&self) -> &[StableComponent] {
        &self.components
    }

    /// Smallest exponent α₁.
    pub fn alpha_min(&self) -> f64 {
        self.components[0].alpha
    }

    pub fn alpha_max(&self) -> f64 {
        self.components[self.components.len() - 1].alpha
    }

    /// β ↦ −β on every component.
    pub fn reflect(&self) -> Self {
        Self {
            components: self.components.iter().map(|c| c.reflect()).collect(),
        }
    }

    /// Stable text identifier used in profile headers.
    pub fn fingerprint(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MultiscaleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", parts.join(";"))
    }
}

/// Quadrature settings for [`invert_fourier`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadControl {
    /// Upper cutoff; `None` picks it from the envelope.
    pub omega_max: Option<f64>,
    /// Panel budget per refinement pass.
    pub panels: usize,
    pub tol: f64,
}

impl Default for QuadControl {
    fn default() -> Self {
        Self {
            omega_max: None,
            panels: 20_000,
            tol: 1e-10,
        }
    }
}

/// ψ(ω) of the spec.
pub fn char_exponent(spec: &MultiscaleSpec, omega: f64) -> Complex64 {
    if omega == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let s = omega.signum();
    let w = omega.abs();
    spec.components
        .iter()
        .map(|c| -c.gamma * w.powf(c.alpha) * Complex64::from_polar(1.0, 0.5 * PI * c.beta * s))
        .sum()
}

/// Half-angle of the sector where every factor of the integrand decays.
fn rotation_angle(spec: &MultiscaleSpec) -> f64 {
    let bound = spec
        .components
        .iter()
        .map(|c| 0.5 * PI * (1.0 + c.beta) / c.alpha)
        .fold(f64::INFINITY, f64::min);
    (0.5 * bound).min(0.25 * PI)
}

struct Integrand<'a> {
    spec: &'a MultiscaleSpec,
    t: f64,
    x: f64,
    dir: Complex64,
    phi: f64,
}

impl Integrand<'_> {
    fn value(&self, r: f64) -> Complex64 {
        if r == 0.0 {
            return self.dir;
        }
        let mut e = Complex64::new(0.0, -self.x) * self.dir * r;
        for c in &self.spec.components {
            let arg = 0.5 * PI * c.beta - c.alpha * self.phi;
            e -= self.t * c.gamma * r.powf(c.alpha) * Complex64::from_polar(1.0, arg);
        }
        e.exp() * self.dir
    }

    fn log_envelope(&self, r: f64) -> f64 {
        let mut l = -self.x * r * self.phi.sin();
        for c in &self.spec.components {
            let arg = 0.5 * PI * c.beta - c.alpha * self.phi;
            l -= self.t * c.gamma * r.powf(c.alpha) * arg.cos();
        }
        l
    }

    /// Phase and decay rate per unit r, used to size the panels.
    fn local_rate(&self, r: f64) -> f64 {
        let mut rate = self.x;
        for c in &self.spec.components {
            rate += self.t * c.gamma * c.alpha * r.powf(c.alpha - 1.0);
        }
        rate
    }
}

fn integrate(f: &Integrand, r_max: f64, refine: f64, budget: usize) -> Result<Complex64> {
    let (nodes, weights) = gl16();
    let panel = |a: f64, b: f64| -> Complex64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut s = Complex64::new(0.0, 0.0);
        for (xi, wi) in nodes.iter().zip(weights) {
            s += f.value(c + h * xi) * *wi;
        }
        s * h
    };
    let r_min = 1e-14 * r_max;
    let mut sum = panel(0.0, r_min);
    let mut a = r_min;
    let mut count = 0usize;
    while a < r_max {
        let h = (a.min(2.0 / f.local_rate(a)) * refine).max(r_min);
        let b = (a + h).min(r_max);
        sum += panel(a, b);
        a = b;
        count += 1;
        if count > budget {
            return Err(Error::Tolerance {
                achieved: f64::NAN,
                requested: f64::NAN,
            });
        }
    }
    Ok(sum)
}

/// Density of the process at (t, x) by numerical Fourier inversion.
///
/// The half-line integral (1/π) Re ∫₀^∞ e^{−ixω} e^{tψ(ω)} dω is taken along a
/// ray rotated into the lower half-plane, inside the sector where both the
/// oscillatory factor and every stable factor decay, so the integrand is
/// non-oscillatory and exponentially small at the cutoff. Negative x uses
/// the mirrored spec.
pub fn invert_fourier(spec: &MultiscaleSpec, t: f64, x: f64, q: &QuadControl) -> Result<f64> {
    if !(t > 0.0) || !x.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "invalid (t, x) = ({t}, {x})"
        )));
    }
    if x < 0.0 {
        return invert_fourier(&spec.reflect(), t, -x, q);
    }
    let phi = rotation_angle(spec);
    let f = Integrand {
        spec,
        t,
        x,
        dir: Complex64::from_polar(1.0, -phi),
        phi,
    };
    let target = (q.tol * 1e-2).ln();
    let r_max = match q.omega_max {
        Some(w) => w,
        None => {
            let tail = |r: f64| f.log_envelope(r) + (4.0 * r.max(1.0) / f.spec.alpha_min()).ln();
            let mut r = 1.0;
            while tail(r) > target {
                r *= 2.0;
                if r > 1e12 {
                    return Err(Error::Tolerance {
                        achieved: tail(r).exp(),
                        requested: q.tol,
                    });
                }
            }
            let mut lo = r / 2.0;
            let mut hi = r;
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if tail(mid) > target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            hi
        }
    };
    let coarse = integrate(&f, r_max, 1.0, q.panels)
        .map_err(|_| Error::Tolerance {
            achieved: f64::INFINITY,
            requested: q.tol,
        })?
        .re
        / PI;
    let fine = integrate(&f, r_max, 0.5, 2 * q.panels)
        .map_err(|_| Error::Tolerance {
            achieved: f64::INFINITY,
            requested: q.tol,
        })?
        .re
        / PI;
    let achieved = (fine - coarse).abs();
    if achieved > q.tol {
        return Err(Error::Tolerance {
            achieved,
            requested: q.tol,
        });
    }
    Ok(fine)
}

/// Linear convolution of two profiles on the same grid, scaled by the step.
///
/// The grid must contain x = 0 at an integer offset so that x_i + x_j falls
/// on the grid.
pub fn convolve_grid(f: &DensityProfile, g: &DensityProfile) -> Result<DensityProfile> {
    f.check_compatible(g)?;
    let n = f.values.len();
    let shift = -f.x0 / f.dx;
    if (shift - shift.round()).abs() > 1e-9 || shift < 0.0 {
        return Err(Error::GridMismatch(
            "grid must contain the origin at a node to convolve".into(),
        ));
    }
    let shift = shift.round() as usize;
    let size = (2 * n - 1).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(size);
    let inv = planner.plan_fft_inverse(size);
    let pad = |v: &[f64]| -> Vec<Complex64> {
        let mut out: Vec<Complex64> = v.iter().map(|&a| Complex64::new(a, 0.0)).collect();
        out.resize(size, Complex64::new(0.0, 0.0));
        out
    };
    let mut a = pad(&f.values);
    let mut b = pad(&g.values);
    fwd.process(&mut a);
    fwd.process(&mut b);
    for (p, q) in a.iter_mut().zip(&b) {
        *p *= q;
    }
    inv.process(&mut a);
    let scale = f.dx / size as f64;
    let values = (0..n).map(|k| a[k + shift].re * scale).collect();
    Ok(DensityProfile {
        values,
        spec: format!("{}*{}", f.spec, g.spec),
        formula_id: "convolution".into(),
        ..f.clone()
    })
}

/// Message when a profile carries more than `budget` mass in its end cells.
pub fn decay_warning(p: &DensityProfile, budget: f64) -> Option<String> {
    let n = p.values.len();
    let k = (n / 100).max(1);
    let edge: f64 = p.values[..k]
        .iter()
        .chain(&p.values[n - k..])
        .map(|v| v.abs())
        .sum::<f64>()
        * p.dx;
    (edge > budget)
        .then(|| format!("profile mass near the grid ends is {edge:e}, above {budget:e}"))
}
