//! Moments of one-sided two-scale kernels, the Stieltjes weight they induce,
//! Carleman diagnostics and the convexity check.

use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::multiscale::{
    one_sided_double, one_sided_hyper, one_sided_meijer, KernelResult, TwoScaleRational,
};
use crate::quad::gl16_panel;
use crate::specfun::{ln_gamma_real, SeriesControl, TailTracker};
use crate::stable::{density, StableComponent};

/// ρ(μ) = ∫ x^μ h(t, x) dx over a list of orders.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence {
    pub mu_values: Vec<f64>,
    pub rho: Vec<f64>,
    pub t: f64,
    pub spec: TwoScaleRational,
}

impl MomentSequence {
    pub fn compute(
        spec: &TwoScaleRational,
        t: f64,
        mu_values: &[f64],
        ctrl: &SeriesControl,
    ) -> Result<Self> {
        let rho = mu_values
            .iter()
            .map(|&mu| moment(spec, mu, t, ctrl))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            mu_values: mu_values.to_vec(),
            rho,
            t,
            spec: *spec,
        })
    }
}

fn check_pair(spec: &TwoScaleRational, t: f64) -> Result<()> {
    if !(t > 0.0) {
        return Err(Error::InvalidParameter(format!("t = {t} must be positive")));
    }
    if !(spec.first.is_one_sided() && spec.second.is_one_sided()) {
        return Err(Error::InvalidParameter(
            "moments need a pair of one-sided components".into(),
        ));
    }
    Ok(())
}

fn check_order(spec: &TwoScaleRational, mu: f64) -> Result<()> {
    if !mu.is_finite() || mu >= spec.m() {
        return Err(Error::Domain(format!(
            "moment of order {mu} is infinite, need mu < {}",
            spec.m()
        )));
    }
    Ok(())
}

/// Time scales t·γ of the larger and smaller exponent.
fn times(spec: &TwoScaleRational, t: f64) -> (f64, f64) {
    let (a, b) = (t * spec.first.gamma, t * spec.second.gamma);
    if spec.first.alpha >= spec.second.alpha {
        (a, b)
    } else {
        (b, a)
    }
}

/// ρ(μ) from the series in powers of t,
/// (1/(M Γ(−μ))) Σ_r (−t_m)^r/r! Γ((mr − μ)/M) t_M^{−(mr − μ)/M}.
///
/// Equal exponents use the closed form Γ(1 − μ/α)/Γ(1 − μ) (t₁ + t₂)^{μ/α}.
pub fn moment_series(
    spec: &TwoScaleRational,
    mu: f64,
    t: f64,
    ctrl: &SeriesControl,
) -> Result<f64> {
    Ok(moment_series_err(spec, mu, t, ctrl)?.0)
}

/// `moment_series` with a rounding-error estimate from the absolute sum of
/// the terms.
pub fn moment_series_err(
    spec: &TwoScaleRational,
    mu: f64,
    t: f64,
    ctrl: &SeriesControl,
) -> Result<(f64, f64)> {
    check_pair(spec, t)?;
    check_order(spec, mu)?;
    if mu == 0.0 {
        return Ok((1.0, 0.0));
    }
    let (big, small) = (spec.big_m(), spec.m());
    let (tb, ts) = times(spec, t);
    if big == small {
        let l =
            ln_gamma_real(1.0 - mu / big)? - ln_gamma_real(1.0 - mu)? + mu / big * (tb + ts).ln();
        return Ok((l.exp(), 8.0 * f64::EPSILON * l.exp()));
    }
    let ln_g = ln_gamma_real(-mu)?;
    let sign_g = if crate::specfun::rgamma(-mu) < 0.0 {
        -1.0
    } else {
        1.0
    };
    let mut tail = TailTracker::new(*ctrl);
    let (mut sum, mut abs_sum) = (0.0, 0.0);
    for r in 0..ctrl.max_terms {
        let rf = r as f64;
        let a = (small * rf - mu) / big;
        let (lg, sg) = crate::specfun::ln_gamma_sign(a)?;
        let l = rf * ts.ln() - ln_gamma_real(rf + 1.0)? + lg - a * tb.ln() - ln_g;
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * sg * sign_g * l.exp() / big;
        sum += term;
        abs_sum += term.abs();
        if !sum.is_finite() {
            return Err(Error::Overflow("moment series".into()));
        }
        if r > 2 && tail.push(term, sum) {
            return Ok((sum, 64.0 * f64::EPSILON * abs_sum + term.abs()));
        }
    }
    Err(Error::NonConvergence {
        what: "moment series",
        terms: ctrl.max_terms,
        last: sum,
    })
}

/// ln ρ(μ) for μ < 0 from the Laplace-transform integral
/// ρ(μ) = (1/Γ(−μ)) ∫₀^∞ s^{−μ−1} exp(−t_M s^M − t_m s^m) ds,
/// summed in s = e^u around the maximum of the integrand.
pub fn ln_moment_integral(spec: &TwoScaleRational, mu: f64, t: f64) -> Result<f64> {
    check_pair(spec, t)?;
    if !(mu < 0.0) {
        return Err(Error::Domain(format!(
            "the Laplace integral needs mu < 0, got {mu}"
        )));
    }
    let (big, small) = (spec.big_m(), spec.m());
    let (tb, ts) = times(spec, t);
    let phi = |u: f64| -mu * u - tb * (big * u).exp() - ts * (small * u).exp();
    let dphi = |u: f64| -mu - big * tb * (big * u).exp() - small * ts * (small * u).exp();
    let (mut lo, mut hi) = (-1.0, 1.0);
    while dphi(lo) < 0.0 {
        lo *= 2.0;
    }
    while dphi(hi) > 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if dphi(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let u0 = 0.5 * (lo + hi);
    let p0 = phi(u0);
    let curv = big * big * tb * (big * u0).exp() + small * small * ts * (small * u0).exp();
    let width = 1.0 / curv.sqrt();
    let edge = |dir: f64| {
        let mut d = width;
        while phi(u0 + dir * d) - p0 > -50.0 {
            d *= 1.5;
        }
        u0 + dir * d
    };
    let (a, b) = (edge(-1.0), edge(1.0));
    let panels = 200;
    let h = (b - a) / panels as f64;
    let f = |u: f64| (phi(u) - p0).exp();
    let s: f64 = (0..panels)
        .map(|k| gl16_panel(f, a + k as f64 * h, a + (k + 1) as f64 * h))
        .sum();
    Ok(p0 + s.ln() - ln_gamma_real(-mu)?)
}

/// ρ(μ), from the series where it keeps full precision and from the
/// Laplace integral otherwise.
pub fn moment(spec: &TwoScaleRational, mu: f64, t: f64, ctrl: &SeriesControl) -> Result<f64> {
    check_pair(spec, t)?;
    check_order(spec, mu)?;
    match moment_series_err(spec, mu, t, ctrl) {
        Ok((v, e)) if e <= 1e-13 * v.abs() || mu >= 0.0 => Ok(v),
        Err(e) if mu >= 0.0 => Err(e),
        _ => Ok(ln_moment_integral(spec, mu, t)?.exp()),
    }
}

/// ln ρ(n) of the Stieltjes problem, ρ(n) = ρ(−lp·n).
pub fn ln_stieltjes_moment(spec: &TwoScaleRational, n: u32, t: f64) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    ln_moment_integral(spec, -(spec.lp() as f64) * n as f64, t)
}

/// Relative error at which a kernel form is taken without trying the others.
const KERNEL_REL: f64 = 1e-13;

/// Largest relative error of a kernel value that is still used.
const KERNEL_USABLE: f64 = 1e-6;

/// Kernel value from the first form reaching `KERNEL_REL`, or else the
/// one with the smallest relative error. Values that every form resolves
/// only as noise around zero come back as zero.
type KernelForm = fn(&TwoScaleRational, f64, f64, &SeriesControl) -> Result<KernelResult>;

fn kernel_precise(spec: &TwoScaleRational, t: f64, x: f64, ctrl: &SeriesControl) -> Result<f64> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    if spec.big_m() == spec.m() {
        let (tb, ts) = times(spec, t);
        let a = spec.m();
        return density(&StableComponent::new(a, -a, 1.0)?, tb + ts, x, ctrl);
    }
    let forms: [KernelForm; 3] = [one_sided_double, one_sided_hyper, one_sided_meijer];
    let mut best: Option<(f64, f64)> = None;
    let mut first_err = None;
    let mut below_noise = false;
    for f in forms {
        match f(spec, t, x, ctrl) {
            Ok(k)
                if k.value.is_finite() && k.value > 0.0 && k.err_est <= KERNEL_USABLE * k.value =>
            {
                let rel = k.err_est / k.value;
                if rel <= KERNEL_REL {
                    return Ok(k.value);
                }
                if best.is_none_or(|(_, r)| rel < r) {
                    best = Some((k.value, rel));
                }
            }
            Ok(k) => below_noise |= k.value.abs() <= k.err_est,
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    match (best, first_err) {
        (Some((v, _)), _) => Ok(v),
        (None, _) if below_noise => Ok(0.0),
        (None, Some(e)) => Err(e),
        (None, None) => Err(Error::Domain(format!("kernel is not positive at x = {x}"))),
    }
}

/// W(t, x) = (1/lp) x^{−1−1/lp} h(t, x^{−1/lp}), whose n-th moment is ρ(−lp·n).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StieltjesWeight {
    pub spec: TwoScaleRational,
    pub t: f64,
}

impl StieltjesWeight {
    pub fn new(spec: &TwoScaleRational, t: f64) -> Result<Self> {
        check_pair(spec, t)?;
        Ok(Self { spec: *spec, t })
    }

    pub fn eval(&self, x: f64, ctrl: &SeriesControl) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("W needs x > 0, got {x}")));
        }
        let lp = self.spec.lp() as f64;
        let h = kernel_precise(&self.spec, self.t, x.powf(-1.0 / lp), ctrl)?;
        Ok(x.powf(-1.0 - 1.0 / lp) * h / lp)
    }
}

pub fn stieltjes_weight(
    spec: &TwoScaleRational,
    t: f64,
    x: f64,
    ctrl: &SeriesControl,
) -> Result<f64> {
    StieltjesWeight::new(spec, t)?.eval(x, ctrl)
}

/// Second derivative of ψ(y) = −ln W(t, e^y) on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexityReport {
    pub y: Vec<f64>,
    /// NaN where W could not be evaluated or was not positive.
    pub values: Vec<f64>,
    pub all_positive: bool,
    /// Smallest grid point from which every later value is positive.
    pub positive_from: Option<f64>,
}

/// Finite-difference step in y.
pub const CONVEXITY_STEP: f64 = 1e-3;

pub fn convexity_check(
    spec: &TwoScaleRational,
    t: f64,
    y_grid: &[f64],
    ctrl: &SeriesControl,
) -> Result<ConvexityReport> {
    let w = StieltjesWeight::new(spec, t)?;
    let psi = |y: f64| -> Option<f64> {
        match w.eval(y.exp(), ctrl) {
            Ok(v) if v > 0.0 && v.is_finite() => Some(-v.ln()),
            _ => None,
        }
    };
    let second = |y: f64, h: f64| -> Option<f64> {
        Some((psi(y + h)? - 2.0 * psi(y)? + psi(y - h)?) / (h * h))
    };
    let h = CONVEXITY_STEP;
    let values: Vec<f64> = y_grid
        .iter()
        .map(|&y| match (second(y, h), second(y, 2.0 * h)) {
            (Some(d1), Some(d2)) => (4.0 * d1 - d2) / 3.0,
            _ => f64::NAN,
        })
        .collect();
    let all_positive = values.iter().all(|&v| v > 0.0);
    let mut positive_from = None;
    for (i, &v) in values.iter().enumerate().rev() {
        if v > 0.0 {
            positive_from = Some(y_grid[i]);
        } else {
            break;
        }
    }
    Ok(ConvexityReport {
        y: y_grid.to_vec(),
        values,
        all_positive,
        positive_from,
    })
}

/// Grid of the convexity check run by the Carleman diagnostic.
pub fn default_convexity_grid() -> Vec<f64> {
    (1..=60).map(|i| 0.05 * i as f64).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Unique,
    NonUniqueCandidate,
    Inconclusive,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Unique => "unique",
            Self::NonUniqueCandidate => "non_unique_candidate",
            Self::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Carleman sums S_N = Σ ρ(n)^{−1/(2n)} and the heuristic verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct CarlemanReport {
    pub t: f64,
    pub ln_rho: Vec<f64>,
    pub terms: Vec<f64>,
    pub partial_sums: Vec<f64>,
    /// s in terms ≈ c·n^{−s}, fitted over the last decade.
    pub exponent: f64,
    pub convexity: Option<ConvexityReport>,
    pub verdict: Verdict,
}

/// Formats e^l in scientific notation without overflowing f64.
fn format_exp(l: f64) -> String {
    let v = l.exp();
    if v.is_finite() && v > 1e-300 {
        return format!("{v:.16e}");
    }
    let d = l / std::f64::consts::LN_10;
    let mut e = d.floor() as i64;
    let mut mant = format!("{:.10}", 10f64.powf(d - e as f64));
    if mant.starts_with("10") {
        e += 1;
        mant = format!("{:.10}", 1.0);
    }
    format!("{mant}e{e}")
}

impl CarlemanReport {
    pub fn to_csv(&self) -> String {
        self.to_csv_orders(1, self.ln_rho.len() as u32)
    }

    /// CSV rows for the orders n0..=n1, clipped to the computed range. The
    /// row n = 0 has ρ(0) = 1 and no Carleman term.
    pub fn to_csv_orders(&self, n0: u32, n1: u32) -> String {
        let mut s = String::from("n,rho,carleman_term,partial_sum\n");
        if n0 == 0 {
            let _ = writeln!(s, "0,{},,", format_exp(0.0));
        }
        let hi = (n1 as usize).min(self.ln_rho.len());
        for i in (n0.max(1) as usize - 1)..hi {
            let (c, p) = (self.terms[i], self.partial_sums[i]);
            let _ = writeln!(
                s,
                "{},{},{c:.16e},{p:.16e}",
                i + 1,
                format_exp(self.ln_rho[i])
            );
        }
        let _ = writeln!(s, "# exponent = {:.6}", self.exponent);
        let _ = writeln!(s, "# verdict = {}", self.verdict);
        s
    }
}

fn fit_exponent(terms: &[f64]) -> f64 {
    let n = terms.len();
    let lo = (n / 10).max(1);
    let pts: Vec<(f64, f64)> = (lo..=n)
        .map(|k| ((k as f64).ln(), terms[k - 1].ln()))
        .collect();
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let (mx, my) = (sx / m, sy / m);
    let (num, den) = pts.iter().fold((0.0, 0.0), |(a, b), p| {
        (a + (p.0 - mx) * (p.1 - my), b + (p.0 - mx).powi(2))
    });
    -num / den
}

pub fn carleman_diagnostic(
    spec: &TwoScaleRational,
    t: f64,
    n_max: u32,
    ctrl: &SeriesControl,
) -> Result<CarlemanReport> {
    check_pair(spec, t)?;
    if n_max < 10 {
        return Err(Error::InvalidParameter(format!(
            "Carleman diagnostic needs N >= 10, got {n_max}"
        )));
    }
    let ln_rho = (1..=n_max)
        .map(|n| ln_stieltjes_moment(spec, n, t))
        .collect::<Result<Vec<_>>>()?;
    let terms: Vec<f64> = ln_rho
        .iter()
        .enumerate()
        .map(|(i, l)| (-l / (2.0 * (i + 1) as f64)).exp())
        .collect();
    let partial_sums = terms
        .iter()
        .scan(0.0, |s, c| {
            *s += c;
            Some(*s)
        })
        .collect();
    let exponent = fit_exponent(&terms);
    let (verdict, convexity) = if exponent <= 1.0 {
        (Verdict::Unique, None)
    } else {
        let c = convexity_check(spec, t, &default_convexity_grid(), ctrl)?;
        let v = if c.all_positive {
            Verdict::NonUniqueCandidate
        } else {
            Verdict::Inconclusive
        };
        (v, Some(c))
    };
    Ok(CarlemanReport {
        t,
        ln_rho,
        terms,
        partial_sums,
        exponent,
        convexity,
        verdict,
    })
}
