//! Parabolic cylinder function D_ν(z) on the real line.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::{gamma, rgamma};
use super::hyper::hyp1f1;
use crate::error::{Error, Result};
use crate::quad::{exp_sinh, gl16_composite};

const NU_MAX: f64 = 80.0;

/// D_ν(z) from the Laplace integral, valid for ν < 0.
fn d_laplace(nu: f64, z: f64) -> f64 {
    debug_assert!(nu < 0.0);
    let (v, _) = exp_sinh(|s| s.powf(-nu - 1.0) * (-z * s - 0.5 * s * s).exp(), 1e-15);
    (-0.25 * z * z).exp() * rgamma(-nu) * v
}

/// Kummer-function form, used near the origin.
fn d_kummer(nu: f64, z: f64) -> Result<f64> {
    let w = 0.5 * z * z;
    let a = PI.sqrt() * rgamma(0.5 * (1.0 - nu)) * hyp1f1(-0.5 * nu, 0.5, w)?;
    let b = (2.0 * PI).sqrt() * z * rgamma(-0.5 * nu) * hyp1f1(0.5 * (1.0 - nu), 1.5, w)?;
    Ok(2f64.powf(0.5 * nu) * (-0.25 * z * z).exp() * (a - b))
}

/// Integer order: Hermite-type recurrence.
fn d_integer(n: u64, z: f64) -> f64 {
    let e = (-0.25 * z * z).exp();
    let (mut d0, mut d1) = (e, z * e);
    if n == 0 {
        return d0;
    }
    for k in 1..n {
        let d2 = z * d1 - k as f64 * d0;
        d0 = d1;
        d1 = d2;
    }
    d1
}

/// Hankel-loop representation for ν > 0 and z < 0, where the value is
/// exponentially large and no cancellation occurs.
fn d_hankel(nu: f64, z: f64) -> Result<f64> {
    let rho = 1.0;
    let f = |s: Complex64| (-z * s - 0.5 * s * s).exp();
    let upper = -z + 14.0;
    let panels = ((upper - rho).ceil() as usize).max(4);
    let ray = gl16_composite(
        |r| (-z * r - 0.5 * r * r).exp() * r.powf(-nu - 1.0),
        rho,
        upper,
        panels,
    );
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let mut circle = Complex64::new(0.0, 0.0);
    for (lo, hi) in [(0.0, PI), (PI, 2.0 * PI)] {
        let re = gl16_composite(
            |th| {
                let s = Complex64::from_polar(rho, th);
                let ms = Complex64::from_polar(rho, th - PI);
                (f(s) * ms.powf(-nu - 1.0) * Complex64::new(0.0, 1.0) * s).re
            },
            lo,
            hi,
            8,
        );
        let im = gl16_composite(
            |th| {
                let s = Complex64::from_polar(rho, th);
                let ms = Complex64::from_polar(rho, th - PI);
                (f(s) * ms.powf(-nu - 1.0) * Complex64::new(0.0, 1.0) * s).im
            },
            lo,
            hi,
            8,
        );
        circle += Complex64::new(re, im);
    }
    let sin = (PI * (nu + 1.0)).sin();
    let loop_integral = Complex64::new(0.0, -2.0 * sin * ray) + circle;
    let d = -(gamma(nu + 1.0)? * (-0.25 * z * z).exp()) * loop_integral / two_pi_i;
    Ok(d.re)
}

/// Forward recurrence from two negative-order Laplace values, for z > 2.
fn d_recurrence(nu: f64, z: f64) -> Result<f64> {
    let frac = nu - nu.floor();
    let start = frac - 2.0;
    let mut d0 = d_laplace(start, z);
    let mut d1 = d_laplace(start + 1.0, z);
    let mut order = start + 1.0;
    while order < nu - 0.5 {
        let d2 = z * d1 - order * d0;
        d0 = d1;
        d1 = d2;
        order += 1.0;
    }
    Ok(d1)
}

/// The parabolic cylinder function D_ν(z) for real ν ≥ −1 and real z.
pub fn parabolic_cylinder_d(nu: f64, z: f64) -> Result<f64> {
    if !nu.is_finite() || !z.is_finite() {
        return Err(Error::InvalidParameter("non-finite argument to D".into()));
    }
    if !(-1.0..=NU_MAX).contains(&nu) {
        return Err(Error::Domain(format!(
            "D_nu implemented for -1 <= nu <= {NU_MAX}, got {nu}"
        )));
    }
    let v = if nu >= 0.0 && nu == nu.round() {
        d_integer(nu as u64, z)
    } else if nu < 0.0 && !(-2.0..=2.0).contains(&z) {
        d_laplace(nu, z)
    } else if (-2.0..=2.0).contains(&z) {
        d_kummer(nu, z)?
    } else if z > 2.0 {
        d_recurrence(nu, z)?
    } else {
        d_hankel(nu, z)?
    };
    if !v.is_finite() {
        return Err(Error::Overflow(format!("D_{nu}({z})")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{parabolic_d_oracle, parabolic_d_oracle_floor};

    #[test]
    fn elementary_orders() {
        assert!((parabolic_cylinder_d(0.0, 1.0).unwrap() - (-0.25f64).exp()).abs() < 1e-15);
        assert_eq!(parabolic_cylinder_d(1.0, 0.0).unwrap(), 0.0);
        // D_{-1}(z) = e^{z²/4} √(π/2) erfc(z/√2); at z = 0 this is √(π/2)
        assert!((parabolic_cylinder_d(-1.0, 0.0).unwrap() - (PI / 2.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn origin_value() {
        // D_ν(0) = 2^{ν/2} √π / Γ((1−ν)/2)
        for &nu in &[0.5, 1.5, 2.5, 0.3, 5.0 / 3.0, 7.0 / 3.0] {
            let exact = 2f64.powf(nu / 2.0) * PI.sqrt() * rgamma((1.0 - nu) / 2.0);
            let d = parabolic_cylinder_d(nu, 0.0).unwrap();
            assert!((d - exact).abs() < 1e-13 * exact.abs().max(1.0), "nu={nu}");
            let o = parabolic_d_oracle(nu, 0.0);
            assert!((d - o).abs() < 1e-10, "oracle nu={nu}: {d} vs {o}");
        }
    }

    #[test]
    fn against_quadrature_oracle() {
        let nus = [
            0.5,
            1.5,
            2.5,
            3.5,
            5.0 / 3.0,
            7.0 / 3.0,
            11.0 / 3.0,
            6.5,
            9.0 + 2.0 / 3.0,
        ];
        let zs = [-5.0, -3.5, -2.5, -1.0, 0.7, 1.9, 2.1, 3.0, 4.5];
        for &nu in &nus {
            for &z in &zs {
                let d = parabolic_cylinder_d(nu, z).unwrap();
                let o = parabolic_d_oracle(nu, z);
                let tol = 1e-10 * o.abs() + parabolic_d_oracle_floor(nu, z);
                assert!((d - o).abs() < tol, "nu={nu} z={z}: {d} vs {o}");
            }
        }
    }

    #[test]
    fn branches_are_continuous() {
        for &nu in &[0.5, 2.5, 5.0 / 3.0, 11.5] {
            for &z in &[-2.0f64, 2.0] {
                let eps = 1e-12 * z.signum();
                let inner = parabolic_cylinder_d(nu, z - eps).unwrap();
                let outer = parabolic_cylinder_d(nu, z + eps).unwrap();
                assert!(
                    (inner - outer).abs() < 1e-10 * inner.abs().max(1e-3),
                    "nu={nu} z={z}: {inner} {outer}"
                );
            }
        }
    }

    #[test]
    fn recurrence_identity() {
        // D_{ν+1}(z) − z D_ν(z) + ν D_{ν−1}(z) = 0
        for &z in &[-6.0, -1.3, 0.4, 3.3, 12.0] {
            let nu = 2.5;
            let a = parabolic_cylinder_d(nu + 1.0, z).unwrap();
            let b = parabolic_cylinder_d(nu, z).unwrap();
            let c = parabolic_cylinder_d(nu - 1.0, z).unwrap();
            let r = a - z * b + nu * c;
            assert!(
                r.abs() < 1e-9 * a.abs().max(b.abs() * z.abs()),
                "z={z}: {r}"
            );
        }
    }

    #[test]
    fn large_argument_expansion() {
        // D_ν(z) ~ z^ν e^{−z²/4} Σ_k (−1)^k (−ν)_{2k} / (k! (2z²)^k)
        let z: f64 = 14.0;
        for &nu in &[0.5, 1.5, 5.0 / 3.0, 2.5] {
            let mut term = 1.0;
            let mut sum = 1.0;
            for k in 0..12 {
                let kf = k as f64;
                term *= -(-nu + 2.0 * kf) * (-nu + 2.0 * kf + 1.0) / ((kf + 1.0) * 2.0 * z * z);
                sum += term;
            }
            let a = z.powf(nu) * (-0.25 * z * z).exp() * sum;
            let d = parabolic_cylinder_d(nu, z).unwrap();
            assert!((d / a - 1.0).abs() < 1e-11, "nu={nu}: {d} vs {a}");
        }
    }

    #[test]
    fn out_of_range() {
        assert!(parabolic_cylinder_d(-3.0, 1.0).is_err());
        assert!(parabolic_cylinder_d(f64::NAN, 1.0).is_err());
    }
}
