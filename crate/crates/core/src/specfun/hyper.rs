//! Generalized hypergeometric series and the confluent functions M and U.

use num_complex::Complex64;

use super::gamma::{gamma, nonpositive_integer, rgamma};
use crate::error::{Error, Result};
use crate::quad::exp_sinh;

/// Truncation control shared by every series evaluator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub max_terms: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Consecutive below-tolerance terms required before stopping.
    pub tail_window: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            max_terms: 2000,
            abs_tol: 0.0,
            rel_tol: 1e-16,
            tail_window: 3,
        }
    }
}

impl SeriesControl {
    pub fn new(max_terms: usize, abs_tol: f64, rel_tol: f64, tail_window: usize) -> Result<Self> {
        let c = Self {
            max_terms,
            abs_tol,
            rel_tol,
            tail_window,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_terms == 0 || self.tail_window == 0 {
            return Err(Error::InvalidParameter(
                "max_terms and tail_window must be positive".into(),
            ));
        }
        if !(self.abs_tol >= 0.0 && self.rel_tol >= 0.0)
            || (self.abs_tol == 0.0 && self.rel_tol == 0.0)
        {
            return Err(Error::InvalidParameter(
                "tolerances must be non-negative and not both zero".into(),
            ));
        }
        Ok(())
    }

    pub fn threshold(&self, sum: f64) -> f64 {
        self.abs_tol + self.rel_tol * sum.abs()
    }
}

/// Tracks the stopping rule over a stream of terms.
#[derive(Debug, Clone)]
pub struct TailTracker {
    ctrl: SeriesControl,
    run: usize,
}

impl TailTracker {
    pub fn new(ctrl: SeriesControl) -> Self {
        Self { ctrl, run: 0 }
    }

    /// Returns true once enough consecutive small terms have been seen.
    pub fn push(&mut self, term: f64, sum: f64) -> bool {
        if term.abs() <= self.ctrl.threshold(sum) {
            self.run += 1;
        } else {
            self.run = 0;
        }
        self.run >= self.ctrl.tail_window
    }
}

/// Upper and lower parameter lists of a pFq series.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamLists {
    pub upper: Vec<Complex64>,
    pub lower: Vec<Complex64>,
}

impl ParamLists {
    pub fn new(upper: Vec<Complex64>, lower: Vec<Complex64>) -> Self {
        Self { upper, lower }
    }

    pub fn real(upper: &[f64], lower: &[f64]) -> Self {
        let c = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self {
            upper: c(upper),
            lower: c(lower),
        }
    }

    fn terminating_degree(&self) -> Option<u64> {
        self.upper
            .iter()
            .filter(|a| a.im == 0.0)
            .filter_map(|a| nonpositive_integer(a.re))
            .min()
    }

    pub fn validate(&self) -> Result<()> {
        for b in &self.lower {
            if b.im == 0.0 && nonpositive_integer(b.re).is_some() {
                return Err(Error::InvalidParameter(format!(
                    "lower parameter {} is a non-positive integer",
                    b.re
                )));
            }
        }
        Ok(())
    }
}

/// Result of a series summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue<T> {
    pub value: T,
    pub n_terms: usize,
    pub err_est: f64,
}

/// The generalized hypergeometric series pFq(upper; lower; x).
pub fn phyper(
    params: &ParamLists,
    x: Complex64,
    ctrl: &SeriesControl,
) -> Result<SeriesValue<Complex64>> {
    params.validate()?;
    ctrl.validate()?;
    let p = params.upper.len();
    let q = params.lower.len();
    let degree = params.terminating_degree();
    if x == Complex64::new(0.0, 0.0) {
        return Ok(SeriesValue {
            value: Complex64::new(1.0, 0.0),
            n_terms: 1,
            err_est: 0.0,
        });
    }
    if degree.is_none() && (p > q + 1 || (p == q + 1 && x.norm() >= 1.0)) {
        return Err(Error::Domain(format!(
            "{p}F{q} series diverges at |x| = {}",
            x.norm()
        )));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut tail = TailTracker::new(*ctrl);
    for n in 0..ctrl.max_terms {
        if let Some(d) = degree {
            if n as u64 >= d {
                return Ok(SeriesValue {
                    value: sum,
                    n_terms: n + 1,
                    err_est: 0.0,
                });
            }
        }
        let nf = n as f64;
        let mut ratio = x / (nf + 1.0);
        for a in &params.upper {
            ratio *= a + nf;
        }
        for b in &params.lower {
            ratio /= b + nf;
        }
        term *= ratio;
        sum += term;
        if !sum.re.is_finite() || !sum.im.is_finite() {
            return Err(Error::Overflow(format!("{p}F{q} partial sum")));
        }
        if tail.push(term.norm(), sum.norm()) {
            return Ok(SeriesValue {
                value: sum,
                n_terms: n + 2,
                err_est: term.norm(),
            });
        }
    }
    Err(Error::NonConvergence {
        what: "hypergeometric series",
        terms: ctrl.max_terms,
        last: term.norm(),
    })
}

/// Real-valued pFq with real parameters and argument.
pub fn phyper_real(
    upper: &[f64],
    lower: &[f64],
    x: f64,
    ctrl: &SeriesControl,
) -> Result<SeriesValue<f64>> {
    for &b in lower {
        if nonpositive_integer(b).is_some() {
            return Err(Error::InvalidParameter(format!(
                "lower parameter {b} is a non-positive integer"
            )));
        }
    }
    ctrl.validate()?;
    let p = upper.len();
    let q = lower.len();
    let degree = upper.iter().filter_map(|&a| nonpositive_integer(a)).min();
    if x == 0.0 {
        return Ok(SeriesValue {
            value: 1.0,
            n_terms: 1,
            err_est: 0.0,
        });
    }
    if degree.is_none() && (p > q + 1 || (p == q + 1 && x.abs() >= 1.0)) {
        return Err(Error::Domain(format!(
            "{p}F{q} series diverges at |x| = {}",
            x.abs()
        )));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut tail = TailTracker::new(*ctrl);
    for n in 0..ctrl.max_terms {
        if let Some(d) = degree {
            if n as u64 >= d {
                return Ok(SeriesValue {
                    value: sum,
                    n_terms: n + 1,
                    err_est: 0.0,
                });
            }
        }
        let nf = n as f64;
        let mut ratio = x / (nf + 1.0);
        for a in upper {
            ratio *= a + nf;
        }
        for b in lower {
            ratio /= b + nf;
        }
        term *= ratio;
        sum += term;
        if !sum.is_finite() {
            return Err(Error::Overflow(format!("{p}F{q} partial sum")));
        }
        if tail.push(term, sum) {
            return Ok(SeriesValue {
                value: sum,
                n_terms: n + 2,
                err_est: term.abs(),
            });
        }
    }
    Err(Error::NonConvergence {
        what: "hypergeometric series",
        terms: ctrl.max_terms,
        last: term.abs(),
    })
}

/// The list Δ(n, a) = {a/n, (a+1)/n, …, (a+n−1)/n}.
pub fn delta_list(n: usize, a: f64) -> Vec<f64> {
    (0..n).map(|j| (a + j as f64) / n as f64).collect()
}

fn tight() -> SeriesControl {
    SeriesControl {
        max_terms: 5000,
        abs_tol: 0.0,
        rel_tol: 1e-17,
        tail_window: 3,
    }
}

/// Kummer's function M(a, b, z) = 1F1(a; b; z).
pub fn hyp1f1(a: f64, b: f64, z: f64) -> Result<f64> {
    if z < -1.0 && nonpositive_integer(a).is_none() {
        // Kummer transformation keeps the terms positive
        let m = phyper_real(&[b - a], &[b], -z, &tight())?.value;
        return Ok(z.exp() * m);
    }
    Ok(phyper_real(&[a], &[b], z, &tight())?.value)
}

/// Tricomi's confluent function U(a, b, z) for z > 0.
pub fn tricomi_u(a: f64, b: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("U requires z > 0, got {z}")));
    }
    let b_integer = b == b.round();
    if z < 0.5 && !b_integer {
        let t1 = gamma(1.0 - b)? * rgamma(a - b + 1.0) * hyp1f1(a, b, z)?;
        let t2 = gamma(b - 1.0)? * rgamma(a) * z.powf(1.0 - b) * hyp1f1(a - b + 1.0, 2.0 - b, z)?;
        return Ok(t1 + t2);
    }
    if a <= 0.0 {
        return Err(Error::Domain(format!(
            "U({a}, {b}, {z}) needs a > 0 away from the origin"
        )));
    }
    // U = z^{-a}/Γ(a) ∫ e^{-σ} σ^{a-1} (1 + σ/z)^{b-a-1} dσ
    let (v, _) = exp_sinh(
        |s| (-s).exp() * s.powf(a - 1.0) * (1.0 + s / z).powf(b - a - 1.0),
        1e-15,
    );
    Ok(v * z.powf(-a) * rgamma(a))
}
