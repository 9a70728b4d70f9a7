//! Gamma function, its logarithm and the identities built on it.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 5.242_187_5;
const LANCZOS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
const LN_SQRT_2PI_SER0: f64 = 0.999_999_999_999_997_092;
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// Returns `Some(n)` when `x` is the non-positive integer `-n`.
pub fn nonpositive_integer(x: f64) -> Option<u64> {
    if x <= 0.0 && x == x.round() {
        Some((-x) as u64)
    } else {
        None
    }
}

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && nonpositive_integer(z.re).is_some()
}

/// sin(πx) with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    if r == 0.5 {
        return 1.0;
    }
    if r == 1.5 {
        return -1.0;
    }
    if r < 0.5 {
        (PI * r).sin()
    } else if r < 1.5 {
        -(PI * (r - 1.0)).sin()
    } else {
        (PI * (r - 2.0)).sin()
    }
}

/// cos(πx), exact at half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

fn lanczos_ln(x: Complex64) -> Complex64 {
    let tmp = x + LANCZOS_G;
    let lead = (x + 0.5) * tmp.ln() - tmp;
    let mut ser = Complex64::new(LN_SQRT_2PI_SER0, 0.0);
    let mut y = x;
    for c in LANCZOS {
        y += 1.0;
        ser += c / y;
    }
    lead + (SQRT_2PI * ser / x).ln()
}

/// Principal branch of ln Γ(z).
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::Pole(format!("{}", z.re)));
    }
    if z.re < 0.5 {
        // reflection
        let s = (Complex64::new(PI, 0.0) * z).sin();
        let w = lanczos_ln(Complex64::new(1.0, 0.0) - z);
        let v = Complex64::new(PI.ln(), 0.0) - s.ln() - w;
        // keep the imaginary part continuous with the principal branch on the real axis
        if z.im == 0.0 {
            return Ok(Complex64::new(v.re, if s.re < 0.0 { PI } else { 0.0 }));
        }
        Ok(v)
    } else {
        Ok(lanczos_ln(z))
    }
}

/// Γ(z) for complex z.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 {
        return gamma(z.re).map(|g| Complex64::new(g, 0.0));
    }
    Ok(ln_gamma(z)?.exp())
}

fn lanczos_ln_real(x: f64) -> f64 {
    let tmp = x + LANCZOS_G;
    let lead = (x + 0.5) * tmp.ln() - tmp;
    let mut ser = LN_SQRT_2PI_SER0;
    let mut y = x;
    for c in LANCZOS {
        y += 1.0;
        ser += c / y;
    }
    lead + (SQRT_2PI * ser / x).ln()
}

/// ln|Γ(x)| and the sign of Γ(x) for real x.
pub fn ln_gamma_sign(x: f64) -> Result<(f64, f64)> {
    if nonpositive_integer(x).is_some() {
        return Err(Error::Pole(format!("{x}")));
    }
    if x < 0.5 {
        let s = sin_pi(x);
        let lg = PI.ln() - s.abs().ln() - lanczos_ln_real(1.0 - x);
        Ok((lg, s.signum()))
    } else {
        Ok((lanczos_ln_real(x), 1.0))
    }
}

/// ln|Γ(x)| for real x.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    ln_gamma_sign(x).map(|(l, _)| l)
}

/// Γ(x) for real x.
pub fn gamma(x: f64) -> Result<f64> {
    if x > 0.0 && x == x.round() && x <= 30.0 {
        let mut f = 1.0;
        for k in 2..(x as u64) {
            f *= k as f64;
        }
        return Ok(f);
    }
    let (l, s) = ln_gamma_sign(x)?;
    Ok(s * l.exp())
}

/// 1/Γ(x), zero at the poles.
pub fn rgamma(x: f64) -> f64 {
    match ln_gamma_sign(x) {
        Ok((l, s)) => s * (-l).exp(),
        Err(_) => 0.0,
    }
}

/// Γ(a)/Γ(b), taking the residue ratio when both are poles and zero when
/// only `b` is.
pub fn gamma_ratio(a: f64, b: f64) -> Result<f64> {
    match (nonpositive_integer(a), nonpositive_integer(b)) {
        (Some(na), Some(nb)) => {
            // Res Γ(-n) = (-1)^n / n!
            let (la, _) = ln_gamma_sign(na as f64 + 1.0)?;
            let (lb, _) = ln_gamma_sign(nb as f64 + 1.0)?;
            let sign = if (na + nb) % 2 == 0 { 1.0 } else { -1.0 };
            Ok(sign * (lb - la).exp())
        }
        (Some(_), None) => Err(Error::Pole(format!("{a}"))),
        (None, Some(_)) => Ok(0.0),
        (None, None) => {
            let (la, sa) = ln_gamma_sign(a)?;
            let (lb, sb) = ln_gamma_sign(b)?;
            Ok(sa * sb * (la - lb).exp())
        }
    }
}

/// Pochhammer symbol (a)_n as a product.
pub fn pochhammer(a: Complex64, n: u32) -> Complex64 {
    let mut p = Complex64::new(1.0, 0.0);
    for k in 0..n {
        p *= a + k as f64;
    }
    p
}

/// Real Pochhammer symbol.
pub fn pochhammer_real(a: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |p, k| p * (a + k as f64))
}

/// Relative residual of Γ(z)Γ(1−z) = π / sin(πz).
pub fn reflection_check(z: Complex64) -> Result<f64> {
    let one = Complex64::new(1.0, 0.0);
    let lhs = gamma_complex(z)? * gamma_complex(one - z)?;
    let s = if z.im == 0.0 {
        Complex64::new(sin_pi(z.re), 0.0)
    } else {
        (Complex64::new(PI, 0.0) * z).sin()
    };
    if s.norm() == 0.0 {
        return Err(Error::Pole(format!("{}", z.re)));
    }
    let rhs = Complex64::new(PI, 0.0) / s;
    Ok((lhs - rhs).norm() / rhs.norm())
}

/// Relative residual of the Gauss–Legendre multiplication formula
/// Γ(na) = (2π)^{(1−n)/2} n^{na−1/2} ∏_j Γ(a + j/n).
pub fn gauss_legendre_check(a: Complex64, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let nf = n as f64;
    let lhs = ln_gamma(a * nf)?;
    let mut rhs =
        Complex64::new(0.5 * (1.0 - nf) * (2.0 * PI).ln(), 0.0) + (a * nf - 0.5) * nf.ln();
    for j in 0..n {
        rhs += ln_gamma(a + j as f64 / nf)?;
    }
    let l = lhs.exp();
    let r = rhs.exp();
    Ok((l - r).norm() / l.norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn trivial_values() {
        assert!(ln_gamma(c(1.0)).unwrap().norm() < 1e-15);
        assert!((ln_gamma(c(0.5)).unwrap().re - PI.sqrt().ln()).abs() < 1e-15);
        assert!((ln_gamma(c(6.0)).unwrap().re - 120f64.ln()).abs() < 1e-14);
        assert!(matches!(ln_gamma(c(0.0)), Err(Error::Pole(_))));
        assert!(matches!(ln_gamma(c(-3.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn factorials_and_half_integers() {
        let mut f = 1.0;
        for n in 1..25 {
            f *= n as f64;
            let g = gamma(n as f64 + 1.0).unwrap();
            assert!((g / f - 1.0).abs() < 1e-13, "n={n}");
        }
        // Γ(n+1/2) = (2n)! √π / (4^n n!)
        let mut v = PI.sqrt();
        for n in 1..20 {
            v *= n as f64 - 0.5;
            let g = gamma(n as f64 + 0.5).unwrap();
            assert!((g / v - 1.0).abs() < 1e-13, "n={n}");
        }
        assert!((gamma(-0.5).unwrap() + 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn complex_recurrence() {
        let z = Complex64::new(0.3, 2.1);
        let lhs = gamma_complex(z + 1.0).unwrap();
        let rhs = z * gamma_complex(z).unwrap();
        assert!((lhs - rhs).norm() / lhs.norm() < 1e-13);
        let z = Complex64::new(-2.7, 0.4);
        let lhs = gamma_complex(z + 1.0).unwrap();
        let rhs = z * gamma_complex(z).unwrap();
        assert!((lhs - rhs).norm() / lhs.norm() < 1e-12);
    }

    #[test]
    fn reflection_and_multiplication() {
        assert!(reflection_check(c(0.5)).unwrap() < 1e-13);
        assert!(reflection_check(c(1.0 / 3.0)).unwrap() < 1e-12);
        assert!(reflection_check(c(0.0)).is_err());
        assert!(gauss_legendre_check(c(1.0), 2).unwrap() < 1e-13);
        assert!(gauss_legendre_check(c(1.0 / 3.0), 3).unwrap() < 1e-12);
        assert!(gauss_legendre_check(c(0.7), 4).unwrap() < 1e-12);
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(c(3.3), 0), c(1.0));
        assert!((pochhammer(c(1.0), 5) - c(120.0)).norm() < 1e-12);
        assert!((pochhammer(c(0.5), 2) - c(0.75)).norm() < 1e-15);
        assert_eq!(pochhammer_real(-2.0, 3), 0.0);
    }

    #[test]
    fn ratio_at_poles() {
        // Γ(-1+ε)/Γ(-3+ε) → (-3)(-2) = 6
        assert!((gamma_ratio(-1.0, -3.0).unwrap() - 6.0).abs() < 1e-13);
        assert_eq!(gamma_ratio(2.5, -1.0).unwrap(), 0.0);
        assert!(gamma_ratio(-1.0, 2.0).is_err());
        assert!((gamma_ratio(5.5, 4.5).unwrap() - 4.5).abs() < 1e-13);
        assert_eq!(rgamma(-4.0), 0.0);
    }
}
