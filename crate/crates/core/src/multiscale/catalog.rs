//! Two-scale kernels with printed closed or semi-closed forms.

use std::f64::consts::PI;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::specfun::{
    delta_list, gamma, ln_gamma_real, parabolic_cylinder_d, phyper_real, rgamma, SeriesControl,
};
use crate::stable::StableComponent;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelCatalog {
    /// (2, 0) + (2, 0).
    BiGauss,
    /// (2, 0) + (1/2, −1/2), a parabolic-cylinder sum.
    GaussLevy,
    /// (2, 0) + (3/2, −1/2), a finite sum of ₄F₆.
    GaussThreeHalf,
    /// One-sided 1/2 + 1/2.
    HalfHalf,
    /// One-sided 1/2 + 1/3, a parabolic-cylinder sum.
    HalfThird,
    /// One-sided 1/3 + 2/3, three ₂F₂ sums.
    ThirdTwoThirds,
}

impl KernelCatalog {
    pub const ALL: [Self; 6] = [
        Self::BiGauss,
        Self::GaussLevy,
        Self::GaussThreeHalf,
        Self::HalfHalf,
        Self::HalfThird,
        Self::ThirdTwoThirds,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::BiGauss => "biGauss",
            Self::GaussLevy => "gaussLevy",
            Self::GaussThreeHalf => "gaussThreeHalf",
            Self::HalfHalf => "halfHalf",
            Self::HalfThird => "halfThird",
            Self::ThirdTwoThirds => "thirdTwoThirds",
        }
    }

    pub fn components(&self) -> (StableComponent, StableComponent) {
        let c = |a: f64, b: f64| StableComponent {
            alpha: a,
            beta: b,
            gamma: 1.0,
        };
        match self {
            Self::BiGauss => (c(2.0, 0.0), c(2.0, 0.0)),
            Self::GaussLevy => (c(2.0, 0.0), c(0.5, -0.5)),
            Self::GaussThreeHalf => (c(2.0, 0.0), c(1.5, -0.5)),
            Self::HalfHalf => (c(0.5, -0.5), c(0.5, -0.5)),
            Self::HalfThird => (c(0.5, -0.5), c(1.0 / 3.0, -1.0 / 3.0)),
            Self::ThirdTwoThirds => (c(2.0 / 3.0, -2.0 / 3.0), c(1.0 / 3.0, -1.0 / 3.0)),
        }
    }

    pub fn is_one_sided(&self) -> bool {
        matches!(
            self,
            Self::HalfHalf | Self::HalfThird | Self::ThirdTwoThirds
        )
    }
}

impl FromStr for KernelCatalog {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<&str> = Self::ALL.iter().map(|k| k.name()).collect();
                Error::InvalidParameter(format!(
                    "unknown kernel `{s}`, expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

const MAX_TERMS: usize = 400;

/// Sums terms until `tail_window` consecutive magnitudes fall below 1e-17
/// of the running sum.
fn sum_until_small<F: FnMut(usize) -> Result<f64>>(mut f: F, what: &'static str) -> Result<f64> {
    let ctrl = SeriesControl {
        abs_tol: 1e-300,
        ..SeriesControl::default()
    };
    let mut tail = crate::specfun::TailTracker::new(ctrl);
    let mut sum = 0.0;
    let mut last = 0.0;
    for n in 0..MAX_TERMS {
        let term = f(n)?;
        sum += term;
        last = term;
        if n > 2 && tail.push(term, sum) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        what,
        terms: MAX_TERMS,
        last: last.abs(),
    })
}

fn gauss_levy(t: f64, x: f64) -> Result<f64> {
    let z = -x / (2.0 * t).sqrt();
    let lq = 0.25 * (0.5 * t * t * t).ln();
    let s = sum_until_small(
        |n| {
            let nf = n as f64;
            let d = parabolic_cylinder_d(0.5 * nf, z)?;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            Ok(sign * (nf * lq - ln_gamma_real(nf + 1.0)?).exp() * d)
        },
        "Gauss-Levy kernel",
    )?;
    Ok((-x * x / (8.0 * t)).exp() / (2.0 * (PI * t).sqrt()) * s)
}

fn gauss_three_half(t: f64, x: f64) -> Result<f64> {
    // x < 0 mirrors the 3/2 component, which turns cos(πj/2 − πr/4) into cos(πj/2 + πr/4)
    let mirror = if x < 0.0 { -1.0 } else { 1.0 };
    let x = x.abs();
    let z = -x.powi(6) / (1728.0 * t * t * t);
    let ctrl = SeriesControl {
        max_terms: 20_000,
        ..SeriesControl::default()
    };
    let s = sum_until_small(
        |r| {
            let rf = r as f64;
            let mut block = 0.0;
            for j in 0..6usize {
                let jf = j as f64;
                let c = 0.5 * (1.0 + jf) + 0.75 * rf;
                let mut upper = vec![1.0];
                upper.extend(delta_list(3, c));
                let f = phyper_real(&upper, &delta_list(6, 1.0 + jf), z, &ctrl)?;
                let xp = if j == 0 { 1.0 } else { x.powi(j as i32) };
                let sign = if (r + j) % 2 == 0 { 1.0 } else { -1.0 };
                let mag = (ln_gamma_real(c)? - ln_gamma_real(rf + 1.0)? - ln_gamma_real(jf + 1.0)?
                    + (0.25 * rf - 0.5 * (1.0 + jf)) * t.ln())
                .exp();
                let cosine = (0.5 * PI * jf - mirror * 0.25 * PI * rf).cos();
                block += sign * mag * xp * cosine * f.value;
            }
            Ok(block)
        },
        "Gauss-3/2 kernel",
    )?;
    Ok(s / (2.0 * PI))
}

fn half_third(t: f64, x: f64) -> Result<f64> {
    let z = t / (2.0 * x).sqrt();
    let l2x = (2.0 * x).ln();
    let s = sum_until_small(
        |n| {
            let nf = n as f64;
            let d = parabolic_cylinder_d(1.0 + 2.0 * nf / 3.0, z)?;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            Ok(sign * (nf * t.ln() - ln_gamma_real(nf + 1.0)? - nf * l2x / 3.0).exp() * d)
        },
        "1/2-1/3 kernel",
    )?;
    Ok((-t * t / (8.0 * x)).exp() / ((2.0 * PI).sqrt() * x) * s)
}

fn third_two_thirds(t: f64, x: f64) -> Result<f64> {
    let z = -4.0 * t.powi(3) / (27.0 * x * x);
    let ctrl = SeriesControl {
        max_terms: 20_000,
        ..SeriesControl::default()
    };
    // (−t)^{j0+n}/(j0! n!) x^{−1−n/3−2j0/3}/Γ(−n/3−2j0/3) ₂F₂(…; z), j0 = 0, 1, 2
    let uppers = [(0.5, 1.0), (5.0 / 6.0, 4.0 / 3.0), (7.0 / 6.0, 5.0 / 3.0)];
    let lowers = [
        [1.0 / 3.0, 2.0 / 3.0],
        [2.0 / 3.0, 4.0 / 3.0],
        [4.0 / 3.0, 5.0 / 3.0],
    ];
    let s = sum_until_small(
        |n| {
            let nf = n as f64;
            let mut block = 0.0;
            for j0 in 0..3usize {
                let jf = j0 as f64;
                let a0 = nf / 3.0 + 2.0 * jf / 3.0;
                let rg = rgamma(-a0);
                if rg == 0.0 {
                    continue;
                }
                let (u1, u2) = uppers[j0];
                let f = phyper_real(&[u1 + nf / 6.0, u2 + nf / 6.0], &lowers[j0], z, &ctrl)?;
                let sign = if (n + j0) % 2 == 0 { 1.0 } else { -1.0 };
                let mag = ((nf + jf) * t.ln() - ln_gamma_real(nf + 1.0)? - (1.0 + a0) * x.ln())
                    .exp()
                    / gamma(jf + 1.0)?;
                block += sign * mag * rg * f.value;
            }
            Ok(block)
        },
        "1/3-2/3 kernel",
    )?;
    Ok(s)
}

/// Evaluates a catalog kernel at (t, x) from its printed form.
pub fn catalog_kernel(name: KernelCatalog, t: f64, x: f64) -> Result<f64> {
    if !(t > 0.0) || !x.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "invalid (t, x) = ({t}, {x})"
        )));
    }
    if name.is_one_sided() && x <= 0.0 {
        return Ok(0.0);
    }
    match name {
        KernelCatalog::BiGauss => Ok((-x * x / (8.0 * t)).exp() / (2.0 * (2.0 * PI * t).sqrt())),
        KernelCatalog::GaussLevy => gauss_levy(t, x),
        KernelCatalog::GaussThreeHalf => gauss_three_half(t, x),
        KernelCatalog::HalfHalf => Ok(t / (PI.sqrt() * x.powf(1.5)) * (-t * t / x).exp()),
        KernelCatalog::HalfThird => half_third(t, x),
        KernelCatalog::ThirdTwoThirds => third_two_thirds(t, x),
    }
}
