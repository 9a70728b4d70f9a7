//! Modified Bessel function K_ν and the Whittaker function W_{κ,μ}.

use super::hyper::tricomi_u;
use crate::error::{Error, Result};

/// K_ν(z) for real ν and z > 0.
///
/// Trapezoidal rule on ∫₀^∞ e^{−z cosh s} cosh(νs) ds, which converges
/// geometrically for this analytic, doubly decaying integrand.
pub fn bessel_k(nu: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("K_nu requires z > 0, got {z}")));
    }
    if !nu.is_finite() || nu.abs() > 10.0 {
        return Err(Error::Domain(format!(
            "K_nu implemented for |nu| <= 10, got {nu}"
        )));
    }
    let s_max = (1.0 + (60.0 + 10.0 * nu.abs()) / z).acosh() + 1.0;
    let f = |s: f64| (-z * (s.cosh() - 1.0)).exp() * (nu * s).cosh();
    let mut n = 32usize;
    let mut prev = f64::NAN;
    loop {
        let h = s_max / n as f64;
        let mut sum = 0.5 * f(0.0);
        for k in 1..=n {
            sum += f(k as f64 * h);
        }
        let cur = sum * h;
        if (cur - prev).abs() <= 1e-15 * cur.abs() || n >= 1 << 14 {
            return Ok(cur * (-z).exp());
        }
        prev = cur;
        n *= 2;
    }
}

/// Whittaker's W_{κ,μ}(z) = e^{−z/2} z^{μ+1/2} U(μ−κ+1/2, 1+2μ, z), z > 0.
pub fn whittaker_w(kappa: f64, mu: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("W requires z > 0, got {z}")));
    }
    let u = tricomi_u(mu - kappa + 0.5, 1.0 + 2.0 * mu, z)?;
    Ok((-0.5 * z).exp() * z.powf(mu + 0.5) * u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{bessel_k_oracle, tricomi_u_oracle};
    use std::f64::consts::PI;

    #[test]
    fn half_order_closed_form() {
        for &z in &[0.01, 0.5, 1.0, 7.0, 49.0] {
            let exact = (PI / (2.0 * z)).sqrt() * (-z).exp();
            let k = bessel_k(0.5, z).unwrap();
            assert!((k / exact - 1.0).abs() < 1e-13, "z={z}");
        }
        assert!((bessel_k(0.5, 1.0).unwrap() - 0.461_068_504_447_894_4).abs() < 1e-13);
    }

    #[test]
    fn against_quadrature_oracle() {
        for &nu in &[0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0, 1.5, 2.0] {
            for &z in &[0.05, 0.3849, 1.0, 2.0 / 27f64.sqrt(), 5.0, 20.0, 50.0] {
                let k = bessel_k(nu, z).unwrap();
                let o = bessel_k_oracle(nu, z);
                assert!((k / o - 1.0).abs() < 1e-10, "nu={nu} z={z}: {k} vs {o}");
            }
        }
    }

    #[test]
    fn large_argument_ratio() {
        let z = 30.0;
        let ratio = bessel_k(1.0 / 3.0, z).unwrap() / ((PI / (2.0 * z)).sqrt() * (-z).exp());
        assert!((ratio - 1.0).abs() < 0.01);
    }

    #[test]
    fn domain_errors() {
        assert!(bessel_k(0.3, 0.0).is_err());
        assert!(whittaker_w(0.5, 1.0 / 6.0, -1.0).is_err());
    }

    #[test]
    fn whittaker_matches_u_oracle() {
        let (kappa, mu) = (0.5, 1.0 / 6.0);
        for &z in &[1.0, 4.0 / 27.0, 0.02, 10.0, 100.0] {
            let w = whittaker_w(kappa, mu, z).unwrap();
            let o = (-0.5 * z).exp()
                * z.powf(mu + 0.5)
                * tricomi_u_oracle(mu - kappa + 0.5, 1.0 + 2.0 * mu, z);
            assert!((w / o - 1.0).abs() < 1e-9, "z={z}");
        }
        let tiny = whittaker_w(kappa, mu, 1e-12).unwrap();
        assert!(tiny.is_finite() && tiny > 0.0);
    }
}
