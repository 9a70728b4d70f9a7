//! G^{q,0}_{p,q}(z) for real parameters, by the Mellin–Barnes integral.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::{ln_gamma, ln_gamma_sign};

/// Value of G^{q,0}_{p,q}(z | a; b) with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeijerValue {
    pub value: f64,
    pub err_est: f64,
}

fn log_integrand(s: Complex64, a: &[f64], b: &[f64], lz: f64) -> Result<Complex64> {
    let mut l = s * lz;
    for &bj in b {
        l += ln_gamma(Complex64::new(bj, 0.0) - s)?;
    }
    for &ai in a {
        l -= ln_gamma(Complex64::new(ai, 0.0) - s)?;
    }
    Ok(l)
}

fn log_abs_real(c: f64, a: &[f64], b: &[f64], lz: f64) -> Option<f64> {
    let mut l = c * lz;
    for &bj in b {
        l += ln_gamma_sign(bj - c).ok()?.0;
    }
    for &ai in a {
        let d = ai - c;
        // stay away from the zeros of 1/Γ(a − s), which make the axis value unrepresentative
        if d < 0.5 && (d - d.round()).abs() < 0.25 {
            return None;
        }
        l -= ln_gamma_sign(d).ok()?.0;
    }
    Some(l)
}

/// Distance kept between the contour and the first pole of Γ(b − s).
const POLE_GAP: f64 = 0.5;

/// Meijer G^{q,0}_{p,q}(z) with q > p and z > 0.
///
/// The vertical contour Re s = c sits left of every pole of Γ(b_j − s), at
/// the point of the real axis where the integrand is smallest, and the
/// integral is summed by the trapezoidal rule with step halving.
pub fn meijer_g(z: f64, a: &[f64], b: &[f64]) -> Result<MeijerValue> {
    if !(z > 0.0) || b.len() <= a.len() {
        return Err(Error::Domain(format!(
            "G^(q,0)_(p,q) needs z > 0 and q > p, got z = {z}, p = {}, q = {}",
            a.len(),
            b.len()
        )));
    }
    let lz = z.ln();
    let bmin = b.iter().copied().fold(f64::INFINITY, f64::min);
    let mut best = (f64::INFINITY, bmin - POLE_GAP);
    let mut rising = 0;
    for i in 0..4000 {
        let c = bmin - POLE_GAP - 0.5 * i as f64;
        if let Some(l) = log_abs_real(c, a, b, lz) {
            if l < best.0 {
                best = (l, c);
                rising = 0;
            } else {
                rising += 1;
            }
        }
        if rising > 8 {
            break;
        }
    }
    let coarse = best.1;
    for i in 0..21 {
        let c = coarse + 0.5 - 0.05 * i as f64;
        if c > bmin - POLE_GAP {
            continue;
        }
        if let Some(l) = log_abs_real(c, a, b, lz) {
            if l < best.0 {
                best = (l, c);
            }
        }
    }
    let c = best.1;
    let g = |y: f64| -> Result<f64> { Ok(log_integrand(Complex64::new(c, y), a, b, lz)?.exp().re) };
    let mut peak = log_integrand(Complex64::new(c, 0.0), a, b, lz)?.re.exp();
    // the nearest pole of the integrand sits bmin − c away from the contour
    let mut h = (0.2 * (bmin - c)).clamp(0.05, 0.5);
    let mut samples = vec![g(0.0)?];
    let mut y = h;
    let mut quiet = 0;
    while quiet < 8 {
        let v = log_integrand(Complex64::new(c, y), a, b, lz)?;
        samples.push(v.exp().re);
        let mag = v.re.exp();
        peak = peak.max(mag);
        quiet = if mag < 1e-18 * peak { quiet + 1 } else { 0 };
        y += h;
        if samples.len() > 200_000 {
            return Err(Error::NonConvergence {
                what: "Meijer-G contour integral",
                terms: samples.len(),
                last: v.re.exp(),
            });
        }
    }
    let trap = |s: &[f64], h: f64| (0.5 * s[0] + s[1..].iter().sum::<f64>()) * h / PI;
    let coarse: Vec<f64> = samples.iter().step_by(2).copied().collect();
    let mut prev = trap(&coarse, 2.0 * h);
    for _ in 0..7 {
        let cur = trap(&samples, h);
        let diff = (cur - prev).abs();
        if diff <= 1e-13 * peak.max(cur.abs()) {
            return Ok(MeijerValue {
                value: cur,
                err_est: diff + 64.0 * f64::EPSILON * peak,
            });
        }
        prev = cur;
        let mut fine = Vec::with_capacity(2 * samples.len());
        for (i, &v) in samples.iter().enumerate() {
            fine.push(v);
            if i + 1 < samples.len() {
                fine.push(g((i as f64 + 0.5) * h)?);
            }
        }
        h *= 0.5;
        samples = fine;
    }
    Err(Error::NonConvergence {
        what: "Meijer-G contour integral",
        terms: samples.len(),
        last: peak,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_reduction() {
        // G^{1,0}_{0,1}(z | −; b) = z^b e^{−z}
        for &(z, b) in &[(0.3, 0.0), (2.0, 0.5), (7.5, 1.25)] {
            let g = meijer_g(z, &[], &[b]).unwrap();
            let e = z.powf(b) * (-z).exp();
            assert!((g.value - e).abs() < 1e-13, "{z} {b}: {} vs {e}", g.value);
        }
    }

    #[test]
    fn bessel_reduction() {
        // G^{2,0}_{0,2}(z | −; ν/2, −ν/2) = 2 K_ν(2√z)
        for &(z, nu) in &[(0.25, 1.0 / 3.0), (1.0, 0.5), (9.0, 0.0)] {
            let g = meijer_g(z, &[], &[0.5 * nu, -0.5 * nu]).unwrap();
            let k = 2.0 * crate::specfun::bessel_k(nu, 2.0 * f64::sqrt(z)).unwrap();
            assert!(
                (g.value - k).abs() < 1e-12 * k.max(1.0),
                "{z} {nu}: {} vs {k}",
                g.value
            );
        }
    }

    #[test]
    fn needs_more_lower_parameters() {
        assert!(meijer_g(0.5, &[1.5], &[0.0]).is_err());
        assert!(meijer_g(-1.0, &[], &[0.0]).is_err());
    }
}
