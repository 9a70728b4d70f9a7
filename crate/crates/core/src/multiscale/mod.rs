//! Two-scale kernels: the density of the sum of two independent stable
//! laws, on the whole line (H) and for one-sided pairs (h).

mod catalog;
mod meijer;
mod series;

pub use catalog::{catalog_kernel, KernelCatalog};
pub use meijer::{meijer_g, MeijerValue};
pub use series::{case_a, case_a_hyper, case_b, case_b_hyper, one_sided_meijer};

use std::fmt;

use crate::error::{Error, Result};
use crate::oracle::{invert_fourier, MultiscaleSpec, QuadControl};
use crate::specfun::SeriesControl;
use crate::stable::{density, RationalExponent, StableComponent};

/// Which representation produced a kernel value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaId {
    CaseA,
    CaseB,
    OnesidedDouble,
    OnesidedHyper,
    Meijer,
    Catalog,
    SingleScale,
    Oracle,
}

impl FormulaId {
    pub fn name(&self) -> &'static str {
        match self {
            Self::CaseA => "caseA",
            Self::CaseB => "caseB",
            Self::OnesidedDouble => "onesided_double",
            Self::OnesidedHyper => "onesided_hyper",
            Self::Meijer => "meijer",
            Self::Catalog => "catalog",
            Self::SingleScale => "single_scale",
            Self::Oracle => "oracle",
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelResult {
    pub value: f64,
    pub n_terms_outer: usize,
    pub n_terms_inner: usize,
    pub err_est: f64,
    pub formula_id: FormulaId,
}

impl KernelResult {
    fn exact(value: f64, formula_id: FormulaId) -> Self {
        Self {
            value,
            n_terms_outer: 0,
            n_terms_inner: 0,
            err_est: 0.0,
            formula_id,
        }
    }
}

/// A pair of stable components with rational α and skewness, split into the
/// larger exponent M = l/k and the smaller m = p/q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoScaleRational {
    pub first: StableComponent,
    pub second: StableComponent,
    pub big: RationalExponent,
    pub small: RationalExponent,
    big_is_first: bool,
}

impl TwoScaleRational {
    pub fn new(first: StableComponent, second: StableComponent) -> Result<Self> {
        let r1 = RationalExponent::from_component(&first)?;
        let r2 = RationalExponent::from_component(&second)?;
        let big_is_first = first.alpha >= second.alpha;
        let (big, small) = if big_is_first { (r1, r2) } else { (r2, r1) };
        Ok(Self {
            first,
            second,
            big,
            small,
            big_is_first,
        })
    }

    fn big_component(&self) -> &StableComponent {
        if self.big_is_first {
            &self.first
        } else {
            &self.second
        }
    }

    fn small_component(&self) -> &StableComponent {
        if self.big_is_first {
            &self.second
        } else {
            &self.first
        }
    }

    pub fn m(&self) -> f64 {
        self.small.alpha()
    }

    pub fn big_m(&self) -> f64 {
        self.big.alpha()
    }

    /// m₁ = min(kp, lq).
    pub fn m1(&self) -> u32 {
        self.big.den * self.small.num
    }

    /// M₁ = max(kp, lq).
    pub fn big_m1(&self) -> u32 {
        self.big.num * self.small.den
    }

    /// l·p, with l the numerator of M and p that of m.
    pub fn lp(&self) -> u32 {
        self.big.num * self.small.num
    }

    /// u = a/k of the larger exponent, (M − β_M)/2.
    pub fn u(&self) -> f64 {
        self.big.skew_num as f64 / self.big.den as f64
    }

    /// v = (m − β_m)/2.
    pub fn v(&self) -> f64 {
        self.small.skew_num as f64 / self.small.den as f64
    }

    /// Time scales t·γ of the larger and smaller exponent.
    fn scaled_times(&self, t: f64) -> (f64, f64) {
        (
            t * self.big_component().gamma,
            t * self.small_component().gamma,
        )
    }

    fn reflect(&self) -> Self {
        Self::new(self.first.reflect(), self.second.reflect())
            .expect("reflection keeps rationality")
    }
}

/// Largest error estimate at which a series value is returned instead of
/// falling back to the Fourier oracle.
const SERIES_ACCEPT: f64 = 1e-10;

fn oracle_kernel(c1: StableComponent, c2: StableComponent, t: f64, x: f64) -> Result<KernelResult> {
    let spec = MultiscaleSpec::new(vec![c1, c2])?;
    let q = QuadControl::default();
    let value = invert_fourier(&spec, t, x, &q)?;
    Ok(KernelResult {
        value,
        n_terms_outer: 0,
        n_terms_inner: 0,
        err_est: q.tol,
        formula_id: FormulaId::Oracle,
    })
}

fn accept(r: Result<KernelResult>) -> Option<KernelResult> {
    r.ok()
        .filter(|k| k.err_est <= SERIES_ACCEPT.max(1e-9 * k.value.abs()) && k.value.is_finite())
}

/// The two-sided kernel H(t, x) of the pair (c1, c2).
///
/// Equal components give the single-scale density at the combined scale.
/// Otherwise x < 0 is evaluated through the mirrored pair; x ≥ 0 uses the
/// power series in x when max α > 1 and the inverse-power series when both
/// α < 1, falling back to the Fourier oracle where the series loses
/// precision or does not apply.
pub fn two_sided_kernel(
    c1: StableComponent,
    c2: StableComponent,
    t: f64,
    x: f64,
    ctrl: &SeriesControl,
) -> Result<KernelResult> {
    c1.validate()?;
    c2.validate()?;
    if !(t > 0.0) || !x.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "invalid (t, x) = ({t}, {x})"
        )));
    }
    if c1.alpha == c2.alpha && c1.beta == c2.beta {
        let c = StableComponent::new(c1.alpha, c1.beta, c1.gamma + c2.gamma)?;
        return Ok(KernelResult::exact(
            density(&c, t, x, ctrl)?,
            FormulaId::SingleScale,
        ));
    }
    if c1.alpha == c2.alpha {
        return oracle_kernel(c1, c2, t, x);
    }
    let rat = match TwoScaleRational::new(c1, c2) {
        Ok(r) => r,
        Err(_) => return oracle_kernel(c1, c2, t, x),
    };
    let (rat, xa) = if x < 0.0 {
        (rat.reflect(), -x)
    } else {
        (rat, x)
    };
    let series = if rat.big_m() > 1.0 {
        accept(case_b(&rat, t, xa, ctrl))
    } else if xa > 0.0 {
        accept(case_a(&rat, t, xa, ctrl))
    } else {
        None
    };
    match series {
        Some(k) => Ok(k),
        None => oracle_kernel(c1, c2, t, x),
    }
}

/// The one-sided kernel h_{α₁,α₂}(t, x), the Laplace convolution of two
/// totally skewed stable densities with 0 < α < 1.
///
/// The double series is used while it keeps precision, then the Meijer-G
/// form, then the Fourier oracle. The result does not depend on the order of
/// the exponents.
pub fn one_sided_kernel(
    alpha1: f64,
    alpha2: f64,
    t: f64,
    x: f64,
    ctrl: &SeriesControl,
) -> Result<KernelResult> {
    let rat = one_sided_pair(alpha1, alpha2)?;
    if !(t > 0.0) || !x.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "invalid (t, x) = ({t}, {x})"
        )));
    }
    if x <= 0.0 {
        return Ok(KernelResult::exact(0.0, FormulaId::OnesidedDouble));
    }
    if alpha1 == alpha2 {
        let c = StableComponent::new(alpha1, -alpha1, 2.0)?;
        return Ok(KernelResult::exact(
            density(&c, t, x, ctrl)?,
            FormulaId::SingleScale,
        ));
    }
    if let Some(k) = accept(one_sided_double(&rat, t, x, ctrl)) {
        return Ok(k);
    }
    if let Some(k) = accept(one_sided_meijer(&rat, t, x, ctrl)) {
        return Ok(k);
    }
    oracle_kernel(rat.first, rat.second, t, x)
}

/// The pair (α₁, −α₁, 1), (α₂, −α₂, 1), ordered so that the result is
/// independent of the argument order.
pub fn one_sided_pair(alpha1: f64, alpha2: f64) -> Result<TwoScaleRational> {
    for a in [alpha1, alpha2] {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "one-sided alpha = {a} outside (0, 1)"
            )));
        }
    }
    let (a, b) = if alpha1 >= alpha2 {
        (alpha1, alpha2)
    } else {
        (alpha2, alpha1)
    };
    TwoScaleRational::new(
        StableComponent::new(a, -a, 1.0)?,
        StableComponent::new(b, -b, 1.0)?,
    )
}

/// Double series of a one-sided pair.
pub fn one_sided_double(
    rat: &TwoScaleRational,
    t: f64,
    x: f64,
    ctrl: &SeriesControl,
) -> Result<KernelResult> {
    let mut k = case_a(rat, t, x, ctrl)?;
    k.formula_id = FormulaId::OnesidedDouble;
    Ok(k)
}

/// Finite hypergeometric sum of a one-sided pair.
pub fn one_sided_hyper(
    rat: &TwoScaleRational,
    t: f64,
    x: f64,
    ctrl: &SeriesControl,
) -> Result<KernelResult> {
    let mut k = case_a_hyper(rat, t, x, ctrl)?;
    k.formula_id = FormulaId::OnesidedHyper;
    Ok(k)
}
