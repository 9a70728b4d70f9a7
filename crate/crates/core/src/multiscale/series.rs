//! Double series, finite hypergeometric sums and the Meijer-G sum.

use std::f64::consts::PI;

use super::meijer::meijer_g;
use super::{FormulaId, KernelResult, TwoScaleRational};
use crate::error::{Error, Result};
use crate::specfun::{delta_list, ln_gamma_real, phyper_real, sin_pi, SeriesControl, TailTracker};

/// Anti-diagonal limit of the double series.
const MAX_DIAGONALS: usize = 800;

struct Accumulated {
    value: f64,
    abs_sum: f64,
    outer: usize,
    inner: usize,
    last: f64,
    inner_err: f64,
}

impl Accumulated {
    fn result(&self, formula_id: FormulaId) -> KernelResult {
        KernelResult {
            value: self.value,
            n_terms_outer: self.outer,
            n_terms_inner: self.inner,
            err_est: self.last + self.inner_err + 64.0 * f64::EPSILON * self.abs_sum,
            formula_id,
        }
    }
}

/// Sums f(n, r) = (magnitude, term) along anti-diagonals n + r = d until the
/// largest magnitude on a diagonal stays below tolerance.
fn sum_diagonals<F>(mut f: F, ctrl: &SeriesControl, what: &'static str) -> Result<Accumulated>
where
    F: FnMut(usize, usize) -> Result<(f64, f64)>,
{
    let mut acc = Accumulated {
        value: 0.0,
        abs_sum: 0.0,
        outer: 0,
        inner: 0,
        last: 0.0,
        inner_err: 0.0,
    };
    let mut tail = TailTracker::new(*ctrl);
    for d in 0..ctrl.max_terms.min(MAX_DIAGONALS) {
        let mut dmax = 0.0f64;
        for n in 0..=d {
            let (mag, term) = f(n, d - n)?;
            acc.value += term;
            acc.abs_sum += term.abs();
            dmax = dmax.max(mag);
        }
        if !acc.value.is_finite() {
            return Err(Error::Overflow(what.into()));
        }
        acc.outer = d + 1;
        acc.inner = d + 1;
        acc.last = dmax;
        if d > 1 && tail.push(dmax, acc.value) {
            return Ok(acc);
        }
    }
    Err(Error::NonConvergence {
        what,
        terms: acc.outer,
        last: acc.last,
    })
}

fn ln_factorial(n: usize) -> Result<f64> {
    ln_gamma_real(n as f64 + 1.0)
}

fn parity(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Inverse-power double series for max α < 1 and x > 0:
/// −(1/π) Σ (−t_M)^n (−t_m)^r/(n! r!) Γ(1+Mn+mr) x^{−1−Mn−mr} sin(π(un + vr)).
pub fn case_a(
    rat: &TwoScaleRational,
    t: f64,
    x: f64,
    ctrl: &SeriesControl,
) -> Result<KernelResult> {
    if !(rat.big_m() < 1.0) {
        return Err(Error::Regime(format!(
            "inverse-power series needs max alpha < 1, got {}",
            rat.big_m()
        )));
    }
    if !(x > 0.0) {
        return Err(Error::Regime(format!(
            "inverse-power series needs x > 0, got {x}"
        )));
    }
    let (tb, ts) = rat.scaled_times(t);
    let (big, small, u, v) = (rat.big_m(), rat.m(), rat.u(), rat.v());
    let (ltb, lts, lx) = (tb.ln(), ts.ln(), x.ln());
    let acc = sum_diagonals(
        |n, r| {
            let (nf, rf) = (n as f64, r as f64);
            let c = 1.0 + big * nf + small * rf;
            let lmag =
                ln_gamma_real(c)? - ln_factorial(n)? - ln_factorial(r)? + nf * ltb + rf * lts
                    - c * lx;
            let mag = lmag.exp() / PI;
            Ok((mag, -parity(n + r) * mag * sin_pi(u * nf + v * rf)))
        },
        ctrl,
        "inverse-power double series",
    )?;
    Ok(acc.result(FormulaId::CaseA))
}

/// Power series in x for max α > 1 and x ≥ 0:
/// (1/(πM)) Σ (−1)^{r+n}/(r! n!) x^n t_M^{−(1+n+mr)/M} t_m^r Γ((1+n+mr)/M)
/// sin[πu(1+n)/M − πr(v − um/M)].
pub fn case_b(
    rat: &TwoScaleRational,
    t: f64,
    x: f64,
    ctrl: &SeriesControl,
) -> Result<KernelResult> {
    if !(rat.big_m() > 1.0) {
        return Err(Error::Regime(format!(
            "power series needs max alpha > 1, got {}",
            rat.big_m()
        )));
    }
    if !(x >= 0.0) {
        return Err(Error::Regime(format!(
            "power series is evaluated for x >= 0, got {x}"
        )));
    }
    let (tb, ts) = rat.scaled_times(t);
    let (big, small, u, v) = (rat.big_m(), rat.m(), rat.u(), rat.v());
    let (ltb, lts) = (tb.ln(), ts.ln());
    let lx = if x > 0.0 { x.ln() } else { 0.0 };
    let shift = v - u * small / big;
    let acc = sum_diagonals(
        |n, r| {
            if x == 0.0 && n > 0 {
                return Ok((0.0, 0.0));
            }
            let (nf, rf) = (n as f64, r as f64);
            let c = (1.0 + nf + small * rf) / big;
            let lmag = ln_gamma_real(c)? - ln_factorial(n)? - ln_factorial(r)? + nf * lx - c * ltb
                + rf * lts;
            let mag = lmag.exp() / (PI * big);
            let phase = u * (1.0 + nf) / big - rf * shift;
            Ok((mag, parity(n + r) * mag * sin_pi(phase)))
        },
        ctrl,
        "power double series",
    )?;
    Ok(acc.result(FormulaId::CaseB))
}

fn hyper_control() -> SeriesControl {
    SeriesControl {
        max_terms: 20_000,
        ..SeriesControl::default()
    }
}

/// Outer loop over r shared by the finite-sum forms: `block(r)` returns the
/// signed contribution of the inner finite sum, the sum of the absolute
/// bounds of its terms, and its inner length.
fn sum_outer<F>(mut block: F, ctrl: &SeriesControl, what: &'static str) -> Result<Accumulated>
where
    F: FnMut(usize) -> Result<(f64, f64, f64, usize)>,
{
    let mut acc = Accumulated {
        value: 0.0,
        abs_sum: 0.0,
        outer: 0,
        inner: 0,
        last: 0.0,
        inner_err: 0.0,
    };
    let mut tail = TailTracker::new(*ctrl);
    for r in 0..ctrl.max_terms.min(MAX_DIAGONALS) {
        let (value, bound, err, inner) = block(r)?;
        acc.value += value;
        acc.abs_sum += bound;
        acc.inner_err += err;
        acc.last = bound;
        acc.outer = r + 1;
        acc.inner = acc.inner.max(inner);
        if !acc.value.is_finite() {
            return Err(Error::Overflow(what.into()));
        }
        if r > 1 && tail.push(bound, acc.value) {
            return Ok(acc);
        }
    }
    Err(Error::NonConvergence {
        what,
        terms: acc.outer,
        last: acc.last,
    })
}

/// Inverse-power series regrouped as Σ_r Σ_{j<S} (prefactor) ·
/// ₁₊K F_S(1, Δ(K, 1+Mj+mr); Δ(S, 1+j); z), S = m₁ = kp, K = lp.
pub fn case_a_hyper(
    rat: &TwoScaleRational,
    t: f64,
    x: f64,
    ctrl: &SeriesControl,
) -> Result<KernelResult> {
    if !(rat.big_m() < 1.0) || !(x > 0.0) {
        return Err(Error::Regime(
            "finite-sum inverse-power form needs max alpha < 1 and x > 0".into(),
        ));
    }
    let (tb, ts) = rat.scaled_times(t);
    let (big, small, u, v) = (rat.big_m(), rat.m(), rat.u(), rat.v());
    let s_len = rat.m1() as usize;
    let k_len = rat.lp() as usize;
    let (sf, kf) = (s_len as f64, k_len as f64);
    let sign_exp = s_len as i64 + rat.big.skew_num as i64 * rat.small.num as i64;
    let z_abs = (sf * tb.ln() + kf * kf.ln() - sf * sf.ln() - kf * x.ln()).exp();
    let z = if sign_exp % 2 == 0 { z_abs } else { -z_abs };
    let (ltb, lts, lx) = (tb.ln(), ts.ln(), x.ln());
    let hctrl = hyper_control();
    let acc = sum_outer(
        |r| {
            let rf = r as f64;
            let (mut val, mut bound, mut err) = (0.0, 0.0, 0.0);
            for j in 0..s_len {
                let jf = j as f64;
                let c = 1.0 + big * jf + small * rf;
                let lmag =
                    ln_gamma_real(c)? - ln_factorial(j)? - ln_factorial(r)? + jf * ltb + rf * lts
                        - c * lx;
                let mag = lmag.exp() / PI;
                let mut upper = vec![1.0];
                upper.extend(delta_list(k_len, c));
                let lower = delta_list(s_len, 1.0 + jf);
                let f = phyper_real(&upper, &lower, z, &hctrl)?;
                let fa = phyper_real(&upper, &lower, z_abs, &hctrl)?;
                let s = sin_pi(u * jf + v * rf);
                val += -parity(j + r) * mag * s * f.value;
                bound += mag * fa.value;
                err += mag * f.err_est;
            }
            Ok((val, bound, err, s_len))
        },
        ctrl,
        "finite-sum inverse-power series",
    )?;
    Ok(acc.result(FormulaId::CaseA))
}

/// Power series regrouped as Σ_r Σ_{j<S} (prefactor) ·
/// ₁₊K F_S(1, Δ(K, (1+j)/M + (m/M)r); Δ(S, 1+j); z), S = lp, K = m₁.
pub fn case_b_hyper(
    rat: &TwoScaleRational,
    t: f64,
    x: f64,
    ctrl: &SeriesControl,
) -> Result<KernelResult> {
    if !(rat.big_m() > 1.0) || !(x >= 0.0) {
        return Err(Error::Regime(
            "finite-sum power form needs max alpha > 1 and x >= 0".into(),
        ));
    }
    let (tb, ts) = rat.scaled_times(t);
    let (big, small, u, v) = (rat.big_m(), rat.m(), rat.u(), rat.v());
    let s_len = rat.lp() as usize;
    let k_len = rat.m1() as usize;
    let (sf, kf) = (s_len as f64, k_len as f64);
    let sign_exp = s_len as i64 + rat.big.skew_num as i64 * rat.small.num as i64;
    let lx = if x > 0.0 { x.ln() } else { f64::NEG_INFINITY };
    let z_abs = (sf * lx + kf * kf.ln() - kf * tb.ln() - sf * sf.ln()).exp();
    let z = if sign_exp % 2 == 0 { z_abs } else { -z_abs };
    let (ltb, lts) = (tb.ln(), ts.ln());
    let shift = v - u * small / big;
    let hctrl = hyper_control();
    let acc = sum_outer(
        |r| {
            let rf = r as f64;
            let (mut val, mut bound, mut err) = (0.0, 0.0, 0.0);
            let inner = if x == 0.0 { 1 } else { s_len };
            for j in 0..inner {
                let jf = j as f64;
                let c = (1.0 + jf + small * rf) / big;
                let xpow = if j == 0 { 0.0 } else { jf * lx };
                let lmag = ln_gamma_real(c)? - ln_factorial(j)? - ln_factorial(r)? + xpow - c * ltb
                    + rf * lts;
                let mag = lmag.exp() / (PI * big);
                let mut upper = vec![1.0];
                upper.extend(delta_list(k_len, c));
                let lower = delta_list(s_len, 1.0 + jf);
                let f = phyper_real(&upper, &lower, z, &hctrl)?;
                let fa = phyper_real(&upper, &lower, z_abs, &hctrl)?;
                let s = sin_pi(u * (1.0 + jf) / big - rf * shift);
                val += parity(j + r) * mag * s * f.value;
                bound += mag * fa.value;
                err += mag * f.err_est;
            }
            Ok((val, bound, err, inner))
        },
        ctrl,
        "finite-sum power series",
    )?;
    Ok(acc.result(FormulaId::CaseB))
}

/// One-sided pair as a single sum of Meijer-G functions:
/// h = x^{−1} √(m₁ lp) (2π)^{(lp−m₁)/2} Σ_r (−t_m)^r/r! (m₁/t_M)^{mr/M}
/// G^{m₁,0}_{lp,m₁}(κ | Δ(lp, 0); Δ(m₁, mr/M)), κ = t_M^{m₁} (lp)^{lp}/(m₁^{m₁} x^{lp}).
pub fn one_sided_meijer(
    rat: &TwoScaleRational,
    t: f64,
    x: f64,
    ctrl: &SeriesControl,
) -> Result<KernelResult> {
    if !(rat.big_m() < 1.0) || !(x > 0.0) {
        return Err(Error::Regime(
            "Meijer-G form needs a one-sided pair and x > 0".into(),
        ));
    }
    let (tb, ts) = rat.scaled_times(t);
    let (big, small) = (rat.big_m(), rat.m());
    let m1 = rat.m1() as usize;
    let lp = rat.lp() as usize;
    let (m1f, lpf) = (m1 as f64, lp as f64);
    let kappa = (m1f * tb.ln() + lpf * lpf.ln() - m1f * m1f.ln() - lpf * x.ln()).exp();
    let pre = (m1f * lpf).sqrt() * (2.0 * PI).powf(0.5 * (lpf - m1f)) / x;
    let a = delta_list(lp, 0.0);
    let ratio = small / big;
    let acc = sum_outer(
        |r| {
            let rf = r as f64;
            let g = meijer_g(kappa, &a, &delta_list(m1, ratio * rf))?;
            let lw = rf * ts.ln() - ln_factorial(r)? + ratio * rf * (m1f / tb).ln();
            let w = pre * lw.exp();
            let val = parity(r) * w * g.value;
            Ok((val, (w * g.value).abs(), w * g.err_est, m1))
        },
        ctrl,
        "Meijer-G sum",
    )?;
    Ok(acc.result(FormulaId::Meijer))
}
