//! Single-scale stable densities v_{α,β}(t, x).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::specfun::{
    bessel_k, gamma, hyp1f1, ln_gamma_real, sin_pi, tricomi_u, whittaker_w, SeriesControl,
    TailTracker,
};

/// One stable multiplier −γ|ω|^α e^{iπβ sgn(ω)/2}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableComponent {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl StableComponent {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let c = Self { alpha, beta, gamma };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let Self { alpha, beta, gamma } = *self;
        if !(alpha.is_finite() && beta.is_finite() && gamma.is_finite()) {
            return Err(Error::InvalidParameter(
                "non-finite stable parameter".into(),
            ));
        }
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {alpha} outside (0, 2]"
            )));
        }
        if (alpha - 1.0).abs() < 1e-12 {
            return Err(Error::InvalidParameter("alpha = 1 is not supported".into()));
        }
        let bound = if alpha < 1.0 { alpha } else { 2.0 - alpha };
        if beta.abs() > bound + 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "|beta| = {} exceeds {bound} for alpha = {alpha}",
                beta.abs()
            )));
        }
        if !(gamma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "gamma = {gamma} must be positive"
            )));
        }
        Ok(())
    }

    /// β ↦ −β: the density of the mirrored process.
    pub fn reflect(&self) -> Self {
        Self {
            beta: -self.beta,
            ..*self
        }
    }

    /// Totally skewed to the right with 0 < α < 1, i.e. supported on x > 0.
    pub fn is_one_sided(&self) -> bool {
        self.alpha < 1.0 && (self.beta + self.alpha).abs() < 1e-12
    }

    /// Real part of the exponent's coefficient, cos(πβ/2) γ.
    pub fn envelope_rate(&self) -> f64 {
        self.gamma * (0.5 * PI * self.beta).cos()
    }
}

impl fmt::Display for StableComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.alpha, self.beta, self.gamma)
    }
}

/// α = l/k and β = (l − 2a)/k with integers l, k, a.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalExponent {
    pub num: u32,
    pub den: u32,
    pub skew_num: i32,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Best rational approximation p/q with q ≤ `max_den`, by continued fractions.
pub fn rationalize_f64(x: f64, max_den: u32, tol: f64) -> Result<(u32, u32)> {
    if !(x > 0.0) {
        return Err(Error::InvalidParameter(format!("cannot rationalize {x}")));
    }
    let (mut h0, mut h1) = (0u64, 1u64);
    let (mut k0, mut k1) = (1u64, 0u64);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        let ai = a as u64;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as u64 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (x - h1 as f64 / k1 as f64).abs() <= tol {
            let (p, q) = (h1 as u32, k1 as u32);
            let g = gcd(p, q);
            return Ok((p / g, q / g));
        }
        let frac = r - a;
        if frac < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    Err(Error::InvalidParameter(format!(
        "{x} is not a rational with denominator <= {max_den}"
    )))
}

impl RationalExponent {
    pub const MAX_DEN: u32 = 64;

    /// Smallest representation; α = l/k is scaled up when β needs it
    /// (for example α = 3/2, β = 0 becomes 6/4 with a = 3).
    pub fn from_component(c: &StableComponent) -> Result<Self> {
        let (l, k) = rationalize_f64(c.alpha, Self::MAX_DEN, 1e-9)?;
        for g in 1..=Self::MAX_DEN / k {
            let (l, k) = (l * g, k * g);
            let a2 = l as f64 - c.beta * k as f64;
            let a = (a2 / 2.0).round();
            if (a2 - 2.0 * a).abs() < 1e-7 {
                return Ok(Self {
                    num: l,
                    den: k,
                    skew_num: a as i32,
                });
            }
        }
        Err(Error::InvalidParameter(format!(
            "beta = {} is not of the form (l - 2a)/k for alpha = {}",
            c.beta, c.alpha
        )))
    }

    pub fn alpha(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn beta(&self) -> f64 {
        (self.num as f64 - 2.0 * self.skew_num as f64) / self.den as f64
    }
}

/// Densities with printed closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Catalog {
    Gauss,
    LevySmirnov,
    ThreeHalf,
    OneThird,
    TwoThirds,
}

impl Catalog {
    pub const ALL: [Catalog; 5] = [
        Catalog::Gauss,
        Catalog::LevySmirnov,
        Catalog::ThreeHalf,
        Catalog::OneThird,
        Catalog::TwoThirds,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Catalog::Gauss => "gauss",
            Catalog::LevySmirnov => "levy_smirnov",
            Catalog::ThreeHalf => "three_half",
            Catalog::OneThird => "one_third",
            Catalog::TwoThirds => "two_thirds",
        }
    }

    pub fn component(&self) -> StableComponent {
        let (alpha, beta) = match self {
            Catalog::Gauss => (2.0, 0.0),
            Catalog::LevySmirnov => (0.5, -0.5),
            Catalog::ThreeHalf => (1.5, -0.5),
            Catalog::OneThird => (1.0 / 3.0, -1.0 / 3.0),
            Catalog::TwoThirds => (2.0 / 3.0, -2.0 / 3.0),
        };
        StableComponent {
            alpha,
            beta,
            gamma: 1.0,
        }
    }

    /// Catalog entry matching a component (γ = 1 only).
    pub fn for_component(c: &StableComponent) -> Option<Self> {
        if (c.gamma - 1.0).abs() > 1e-14 {
            return None;
        }
        Self::ALL.into_iter().find(|e| {
            let d = e.component();
            (d.alpha - c.alpha).abs() < 1e-12 && (d.beta - c.beta).abs() < 1e-12
        })
    }
}

impl FromStr for Catalog {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown catalog density '{s}'")))
    }
}

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter(format!("t = {t} must be positive")));
    }
    Ok(())
}

fn three_half(t: f64, x: f64) -> Result<f64> {
    let y = 4.0 * x.abs().powi(3) / (27.0 * t * t);
    let a1 = (2.0 / t).powf(2.0 / 3.0) * gamma(5.0 / 6.0)? / (3.0 * PI.sqrt() * gamma(2.0 / 3.0)?);
    if y <= 1.0 {
        let a2 =
            (2.0 / t).powf(4.0 / 3.0) * gamma(7.0 / 6.0)? / (9.0 * PI.sqrt() * gamma(4.0 / 3.0)?);
        let z = -4.0 * x.powi(3) / (27.0 * t * t);
        return Ok(
            a1 * hyp1f1(5.0 / 6.0, 2.0 / 3.0, z)? + a2 * x * hyp1f1(7.0 / 6.0, 4.0 / 3.0, z)?
        );
    }
    // the same pair regrouped into a single Tricomi function on each side
    if x > 0.0 {
        let c = gamma(1.0 / 6.0)? / gamma(1.0 / 3.0)?;
        Ok(a1 * c * (-y).exp() * y.cbrt() * tricomi_u(1.0 / 6.0, 4.0 / 3.0, y)?)
    } else {
        let c = gamma(7.0 / 6.0)? / gamma(1.0 / 3.0)?;
        Ok(a1 * c * tricomi_u(5.0 / 6.0, 2.0 / 3.0, y)?)
    }
}

/// Printed closed form of a catalog density.
pub fn density_closed(name: Catalog, t: f64, x: f64) -> Result<f64> {
    check_t(t)?;
    match name {
        Catalog::Gauss => Ok((-x * x / (4.0 * t)).exp() / (2.0 * (PI * t).sqrt())),
        Catalog::LevySmirnov => {
            if x <= 0.0 {
                Ok(0.0)
            } else {
                Ok(t * (-t * t / (4.0 * x)).exp() / (2.0 * PI.sqrt() * x.powf(1.5)))
            }
        }
        Catalog::ThreeHalf => three_half(t, x),
        Catalog::OneThird => {
            if x <= 0.0 {
                return Ok(0.0);
            }
            let z = 2.0 * t.powf(1.5) / (27f64.sqrt() * x.sqrt());
            if z > 700.0 {
                return Ok(0.0);
            }
            Ok(t.powf(1.5) / (3.0 * PI * x.powf(1.5)) * bessel_k(1.0 / 3.0, z)?)
        }
        Catalog::TwoThirds => {
            if x <= 0.0 {
                return Ok(0.0);
            }
            let z = 4.0 * t.powi(3) / (27.0 * x * x);
            if z > 1400.0 {
                return Ok(0.0);
            }
            Ok((3.0 / PI).sqrt() * (-0.5 * z).exp() / x * whittaker_w(0.5, 1.0 / 6.0, z)?)
        }
    }
}

/// Which representation produced a series density value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Series,
    /// Small-x saddle-point envelope; not a precision value.
    Asymptotic,
}

/// A series density value with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesDensity {
    pub value: f64,
    pub n_terms: usize,
    pub err_est: f64,
    /// Σ|terms| / |Σ terms|, the cancellation factor.
    pub cancellation: f64,
    pub regime: Regime,
}

impl SeriesDensity {
    pub fn low_precision(&self) -> bool {
        self.regime == Regime::Asymptotic || self.cancellation > 1e6
    }
}

/// Largest tolerated cancellation factor when the series is used below the
/// nominal regime boundary.
const CANCELLATION_LIMIT: f64 = 1e4;

/// −(1/π) Σ_r (−t)^r/r! Γ(1+αr) x^{−1−αr} sin(πr(α−β)/2), for 0 < α < 1, x > 0.
fn inverse_power_series(
    alpha: f64,
    beta: f64,
    t: f64,
    x: f64,
    ctrl: &SeriesControl,
) -> Result<SeriesDensity> {
    let lt = (t / x.powf(alpha)).ln();
    let phase = 0.5 * (alpha - beta);
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut tail = TailTracker::new(*ctrl);
    let mut last = 0.0;
    for r in 1..ctrl.max_terms {
        let rf = r as f64;
        let mag = (ln_gamma_real(1.0 + alpha * rf)? - ln_gamma_real(rf + 1.0)? + rf * lt).exp()
            / (PI * x);
        let sign = if r % 2 == 0 { -1.0 } else { 1.0 };
        let term = sign * mag * sin_pi(rf * phase);
        sum += term;
        abs_sum += term.abs();
        last = mag;
        if !sum.is_finite() {
            return Err(Error::Overflow("stable series".into()));
        }
        if tail.push(mag, sum) {
            return Ok(SeriesDensity {
                value: sum,
                n_terms: r,
                err_est: mag + 64.0 * f64::EPSILON * abs_sum,
                cancellation: if sum != 0.0 {
                    abs_sum / sum.abs()
                } else {
                    f64::INFINITY
                },
                regime: Regime::Series,
            });
        }
    }
    Err(Error::NonConvergence {
        what: "stable inverse-power series",
        terms: ctrl.max_terms,
        last,
    })
}

/// (1/(πα)) Σ_n (−x)^n/n! t^{−(1+n)/α} Γ((1+n)/α) sin(π(1+n)(α−β)/(2α)), 1 < α ≤ 2.
fn power_series(
    alpha: f64,
    beta: f64,
    t: f64,
    x: f64,
    ctrl: &SeriesControl,
) -> Result<SeriesDensity> {
    let u = 0.5 * (alpha - beta) / alpha;
    let lt = t.ln();
    let lx = x.abs().ln();
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut tail = TailTracker::new(*ctrl);
    let mut last = 0.0;
    for n in 0..ctrl.max_terms {
        let nf = n as f64;
        let e = (1.0 + nf) / alpha;
        let lmag = ln_gamma_real(e)? - ln_gamma_real(nf + 1.0)? - e * lt
            + if n == 0 { 0.0 } else { nf * lx };
        let mag = if x == 0.0 && n > 0 {
            0.0
        } else {
            lmag.exp() / (PI * alpha)
        };
        let sign = if n % 2 == 1 && x > 0.0 { -1.0 } else { 1.0 };
        let term = sign * mag * sin_pi((1.0 + nf) * u);
        sum += term;
        abs_sum += term.abs();
        last = mag;
        if !sum.is_finite() {
            return Err(Error::Overflow("stable power series".into()));
        }
        if n > 0 && tail.push(mag, sum) {
            return Ok(SeriesDensity {
                value: sum,
                n_terms: n + 1,
                err_est: mag + 64.0 * f64::EPSILON * abs_sum,
                cancellation: if sum != 0.0 {
                    abs_sum / sum.abs()
                } else {
                    f64::INFINITY
                },
                regime: Regime::Series,
            });
        }
    }
    Err(Error::NonConvergence {
        what: "stable power series",
        terms: ctrl.max_terms,
        last,
    })
}

/// The one-sided series −(1/π) Σ_r (−t)^r/r! Γ(1+αr) x^{−1−αr} sin(πrα).
///
/// For x^α ≥ t/2 the series is returned as is. Below that it is still used
/// while its cancellation factor stays under 10⁴; otherwise the small-x
/// envelope is returned and flagged as [`Regime::Asymptotic`].
pub fn one_sided_series(alpha: f64, t: f64, x: f64, ctrl: &SeriesControl) -> Result<SeriesDensity> {
    check_t(t)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "one-sided alpha = {alpha} outside (0, 1)"
        )));
    }
    if !(x > 0.0) {
        return Err(Error::Domain(format!(
            "one-sided series needs x > 0, got {x}"
        )));
    }
    let above = x.powf(alpha) >= 0.5 * t;
    let series = inverse_power_series(alpha, -alpha, t, x, ctrl);
    match series {
        Ok(s) if above || s.cancellation <= CANCELLATION_LIMIT => Ok(s),
        Ok(_) | Err(Error::NonConvergence { .. }) | Err(Error::Overflow(_)) if !above => {
            Ok(SeriesDensity {
                value: small_x_asymptotic(alpha, t, x),
                n_terms: 0,
                err_est: f64::INFINITY,
                cancellation: f64::INFINITY,
                regime: Regime::Asymptotic,
            })
        }
        other => other,
    }
}

/// K t^{1/(2(1−α))} x^{−(2−α)/(2−2α)} exp(−A t^{1/(1−α)} x^{−α/(1−α)}) with the
/// saddle-point constants A = (1−α) α^{α/(1−α)}, K = α^{1/(2(1−α))}/√(2π(1−α)).
pub fn small_x_asymptotic(alpha: f64, t: f64, x: f64) -> f64 {
    let b = 1.0 - alpha;
    let a = b * alpha.powf(alpha / b);
    let k = alpha.powf(0.5 / b) / (2.0 * PI * b).sqrt();
    let expo = -a * t.powf(1.0 / b) * x.powf(-alpha / b);
    k * t.powf(0.5 / b) * x.powf(-(2.0 - alpha) / (2.0 * b)) * expo.exp()
}

/// t^{−1/α} v(1, x t^{−1/α}), given v1 = v(1, x t^{−1/α}).
pub fn rescale(v1: f64, alpha: f64, t: f64) -> f64 {
    t.powf(-1.0 / alpha) * v1
}

/// Series evaluation of a general admissible component.
///
/// Uses inverse powers of x for α < 1 (x ≠ 0, negative x through β ↦ −β)
/// and the entire power series in x for α > 1. The scale γ enters as t ↦ γt.
pub fn density_series(
    c: &StableComponent,
    t: f64,
    x: f64,
    ctrl: &SeriesControl,
) -> Result<SeriesDensity> {
    c.validate()?;
    check_t(t)?;
    let tg = t * c.gamma;
    if c.alpha < 1.0 {
        if x == 0.0 {
            return Err(Error::Regime(
                "inverse-power series undefined at x = 0".into(),
            ));
        }
        let (beta, xa) = if x > 0.0 { (c.beta, x) } else { (-c.beta, -x) };
        if (beta - c.alpha).abs() < 1e-12 {
            // supported on the other half-line
            return Ok(SeriesDensity {
                value: 0.0,
                n_terms: 0,
                err_est: 0.0,
                cancellation: 1.0,
                regime: Regime::Series,
            });
        }
        if (beta + c.alpha).abs() < 1e-12 {
            return one_sided_series(c.alpha, tg, xa, ctrl);
        }
        inverse_power_series(c.alpha, beta, tg, xa, ctrl)
    } else {
        power_series(c.alpha, c.beta, tg, x, ctrl)
    }
}

/// Best available evaluation: catalog closed form when one exists (γ
/// folded into t), else the series.
pub fn density(c: &StableComponent, t: f64, x: f64, ctrl: &SeriesControl) -> Result<f64> {
    let unit = StableComponent { gamma: 1.0, ..*c };
    if let Some(cat) = Catalog::for_component(&unit) {
        return density_closed(cat, t * c.gamma, x);
    }
    if c.alpha < 1.0 && (c.beta - c.alpha).abs() < 1e-12 {
        return density(&c.reflect(), t, -x, ctrl);
    }
    Ok(density_series(c, t, x, ctrl)?.value)
}
