//! Pseudospectral solver for u_t + A u + (g(u))_x = 0 on a periodic box,
//! with the diagnostics of its long-time behavior.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use statrs::function::erf::erf;

use crate::error::{Error, Result};
use crate::oracle::{char_exponent, invert_fourier, MultiscaleSpec, QuadControl};

/// Flux g of the conservation law.
#[derive(Clone)]
pub enum Nonlinearity {
    Zero,
    /// g(u) = c·u·|u|^{r−1}.
    Power {
        r: f64,
        c: f64,
    },
    /// g(u) = c·u².
    Burgers {
        c: f64,
    },
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl Nonlinearity {
    pub fn eval(&self, u: f64) -> f64 {
        match self {
            Self::Zero => 0.0,
            Self::Power { r, c } => c * u * u.abs().powf(r - 1.0),
            Self::Burgers { c } => c * u * u,
            Self::Custom(f) => f(u),
        }
    }

    /// r > max(α₁, 1) for the power family.
    pub fn is_supercritical(&self, spec: &MultiscaleSpec) -> bool {
        match self {
            Self::Power { r, .. } => *r > spec.alpha_min().max(1.0),
            _ => false,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Self::Zero => true,
            Self::Power { c, .. } | Self::Burgers { c } => *c == 0.0,
            Self::Custom(_) => false,
        }
    }
}

impl fmt::Debug for Nonlinearity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zero => write!(f, "Zero"),
            Self::Power { r, c } => write!(f, "Power {{ r: {r}, c: {c} }}"),
            Self::Burgers { c } => write!(f, "Burgers {{ c: {c} }}"),
            Self::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// The box is [−L, L).
    pub half_width: f64,
    pub n_modes: usize,
    pub dt: f64,
    pub t_end: f64,
    pub spec: MultiscaleSpec,
    pub nonlinearity: Nonlinearity,
    pub dealias: bool,
    /// Snapshot times in (0, t_end]; t = 0 is always recorded.
    pub output_times: Vec<f64>,
    /// Largest linear-kernel density allowed at x = ±L and t = t_end.
    pub tail_budget: f64,
}

impl SolverConfig {
    pub fn new(
        half_width: f64,
        n_modes: usize,
        dt: f64,
        t_end: f64,
        spec: MultiscaleSpec,
        nonlinearity: Nonlinearity,
    ) -> Self {
        Self {
            half_width,
            n_modes,
            dt,
            t_end,
            spec,
            nonlinearity,
            dealias: true,
            output_times: vec![t_end],
            tail_budget: 1e-8,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.half_width > 0.0 && self.half_width.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "half width L = {} must be positive",
                self.half_width
            )));
        }
        if self.n_modes < 64 || !self.n_modes.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "N = {} must be a power of two and at least 64",
                self.n_modes
            )));
        }
        if !(self.dt > 0.0) || !(self.t_end > 0.0) || !self.t_end.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "dt = {} and t_end = {} must be positive",
                self.dt, self.t_end
            )));
        }
        if let Nonlinearity::Power { r, .. } = self.nonlinearity {
            if !(r > 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "power r = {r} must exceed 1"
                )));
            }
        }
        let mut prev = 0.0;
        for &t in &self.output_times {
            if !(t > prev && t <= self.t_end) {
                return Err(Error::InvalidParameter(format!(
                    "output times must increase within (0, t_end], got {t}"
                )));
            }
            prev = t;
        }
        if !(self.tail_budget > 0.0) {
            return Err(Error::InvalidParameter(
                "tail budget must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Largest density of the linear kernel at x = ±L, t = t_end.
    pub fn boundary_density(&self) -> Result<f64> {
        let q = QuadControl::default();
        let l = self.half_width;
        let a = invert_fourier(&self.spec, self.t_end, l, &q)?;
        let b = invert_fourier(&self.spec, self.t_end, -l, &q)?;
        Ok(a.abs().max(b.abs()))
    }

    /// Errors when the linear kernel is not small enough at the box edge.
    pub fn check_tail_budget(&self) -> Result<()> {
        let d = self.boundary_density()?;
        if d > self.tail_budget {
            return Err(Error::InvalidParameter(format!(
                "linear kernel density {d:e} at x = ±{} exceeds the tail budget {:e}; enlarge L",
                self.half_width, self.tail_budget
            )));
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.half_width / self.n_modes as f64
    }

    pub fn grid(&self) -> Vec<f64> {
        grid_points(self.half_width, self.n_modes)
    }
}

/// x_j = −L + j·2L/N.
pub fn grid_points(half_width: f64, n: usize) -> Vec<f64> {
    let dx = 2.0 * half_width / n as f64;
    (0..n).map(|j| -half_width + j as f64 * dx).collect()
}

/// ω_k = πk/L in FFT order.
pub fn frequencies(half_width: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| {
            let kk = if k <= n / 2 {
                k as f64
            } else {
                k as f64 - n as f64
            };
            PI * kk / half_width
        })
        .collect()
}

/// exp(τ ψ(ω_k)) on the frequency grid of the box [−L, L).
pub fn linear_propagator(
    spec: &MultiscaleSpec,
    tau: f64,
    n: usize,
    half_width: f64,
) -> Vec<Complex64> {
    frequencies(half_width, n)
        .into_iter()
        .map(|w| (tau * char_exponent(spec, w)).exp())
        .collect()
}

/// Transforms with û_k = Σ_j u_j e^{iω_k x_j} and its inverse. The phase of
/// the box offset −L cancels between the two.
struct Spectral {
    n: usize,
    to_modes: Arc<dyn Fft<f64>>,
    to_grid: Arc<dyn Fft<f64>>,
    scratch: Vec<Complex64>,
}

impl Spectral {
    fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        let to_modes = planner.plan_fft_inverse(n);
        let to_grid = planner.plan_fft_forward(n);
        let len = to_modes
            .get_inplace_scratch_len()
            .max(to_grid.get_inplace_scratch_len());
        Self {
            n,
            to_modes,
            to_grid,
            scratch: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    fn modes(&mut self, u: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = u.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.to_modes
            .process_with_scratch(&mut buf, &mut self.scratch);
        buf
    }

    fn grid(&mut self, modes: &[Complex64]) -> Vec<f64> {
        let mut buf = modes.to_vec();
        self.to_grid
            .process_with_scratch(&mut buf, &mut self.scratch);
        let s = 1.0 / self.n as f64;
        buf.into_iter().map(|c| c.re * s).collect()
    }
}

/// u(t) = e^{−tA} u₀ on the periodic grid.
pub fn linear_evolution(u0: &[f64], spec: &MultiscaleSpec, t: f64, half_width: f64) -> Vec<f64> {
    let n = u0.len();
    let mut sp = Spectral::new(n);
    let mut m = sp.modes(u0);
    for (c, e) in m.iter_mut().zip(linear_propagator(spec, t, n, half_width)) {
        *c *= e;
    }
    sp.grid(&m)
}

/// φ₁(z) = (e^z − 1)/z and φ₂(z) = (e^z − 1 − z)/z².
fn phi12(z: Complex64) -> (Complex64, Complex64) {
    if z.norm() < 0.1 {
        let (mut p1, mut p2) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        let mut term = Complex64::new(1.0, 0.0);
        let mut fact = 1.0;
        for n in 0..20 {
            p1 += term / (fact * (n + 1) as f64);
            p2 += term / (fact * ((n + 1) * (n + 2)) as f64);
            fact *= (n + 1) as f64;
            term *= z;
        }
        return (p1, p2);
    }
    let e = z.exp();
    ((e - 1.0) / z, (e - 1.0 - z) / (z * z))
}

struct EtdCoefficients {
    e: Vec<Complex64>,
    f1: Vec<Complex64>,
    f2: Vec<Complex64>,
}

impl EtdCoefficients {
    fn new(psi: &[Complex64], h: f64) -> Self {
        let mut e = Vec::with_capacity(psi.len());
        let mut f1 = Vec::with_capacity(psi.len());
        let mut f2 = Vec::with_capacity(psi.len());
        for &p in psi {
            let z = p * h;
            let (p1, p2) = phi12(z);
            e.push(z.exp());
            f1.push(p1 * h);
            f2.push(p2 * h);
        }
        Self { e, f1, f2 }
    }
}

/// Grid values and norms at one output time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub t: f64,
    pub mass: f64,
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
    pub min: f64,
    pub max: f64,
}

impl Diagnostics {
    fn of(t: f64, u: &[f64], dx: f64) -> Self {
        let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
        for &v in u {
            min = min.min(v);
            max = max.max(v);
        }
        Self {
            t,
            mass: u.iter().sum::<f64>() * dx,
            l1: lp_norm(u, dx, 1.0),
            l2: lp_norm(u, dx, 2.0),
            linf: lp_norm(u, dx, f64::INFINITY),
            min,
            max,
        }
    }

    pub fn norm(&self, p: f64) -> Option<f64> {
        if p == 1.0 {
            Some(self.l1)
        } else if p == 2.0 {
            Some(self.l2)
        } else if p == f64::INFINITY {
            Some(self.linf)
        } else {
            None
        }
    }
}

/// Discrete L^p norm, p ≥ 1 or p = ∞.
pub fn lp_norm(u: &[f64], dx: f64, p: f64) -> f64 {
    if p == f64::INFINITY {
        u.iter().fold(0.0, |m, v| m.max(v.abs()))
    } else if p == 1.0 {
        u.iter().map(|v| v.abs()).sum::<f64>() * dx
    } else {
        (u.iter().map(|v| v.abs().powf(p)).sum::<f64>() * dx).powf(1.0 / p)
    }
}

fn check_norm_index(p: f64) -> Result<()> {
    if p >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "norm index p = {p} must be at least 1"
        )))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub half_width: f64,
    pub times: Vec<f64>,
    pub snapshots: Vec<Vec<f64>>,
    pub diagnostics: Vec<Diagnostics>,
    pub warnings: Vec<String>,
}

impl Trajectory {
    pub fn dx(&self) -> f64 {
        2.0 * self.half_width / self.snapshots[0].len() as f64
    }

    pub fn initial(&self) -> &[f64] {
        &self.snapshots[0]
    }

    /// Largest relative change of the mass over the run.
    pub fn mass_drift(&self) -> f64 {
        let m0 = self.diagnostics[0].mass;
        self.diagnostics
            .iter()
            .map(|d| (d.mass - m0).abs() / m0.abs().max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max)
    }

    pub fn snapshot_csv(&self, i: usize) -> String {
        let mut s = format!("# t = {}\nx,u\n", self.times[i]);
        let n = self.snapshots[i].len();
        for (x, u) in grid_points(self.half_width, n)
            .iter()
            .zip(&self.snapshots[i])
        {
            s.push_str(&format!("{x:.16e},{u:.16e}\n"));
        }
        s
    }
}

/// Fraction of the spectral energy above |k| = N/3 where aliasing sets in.
fn tail_energy(modes: &[Complex64]) -> f64 {
    let n = modes.len();
    let cut = n / 3;
    let (mut tail, mut total) = (0.0, 0.0);
    for (k, c) in modes.iter().enumerate() {
        let kk = if k <= n / 2 { k } else { n - k };
        let e = c.norm_sqr();
        total += e;
        if kk > cut {
            tail += e;
        }
    }
    if total > 0.0 {
        tail / total
    } else {
        0.0
    }
}

const ALIAS_WARNING: f64 = 1e-6;

/// Integrates from u₀ with second-order exponential time differencing
/// (Cox–Matthews): the linear part is applied exactly through its Fourier
/// multiplier, the flux divergence pseudospectrally.
pub fn solve(u0: &[f64], cfg: &SolverConfig) -> Result<Trajectory> {
    cfg.validate()?;
    cfg.check_tail_budget()?;
    let n = cfg.n_modes;
    if u0.len() != n {
        return Err(Error::GridMismatch(format!(
            "u0 has {} values, the grid {n}",
            u0.len()
        )));
    }
    if u0.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("u0 has non-finite values".into()));
    }
    let total: f64 = u0.iter().map(|v| v.abs()).sum();
    let edge: f64 = u0
        .iter()
        .zip(cfg.grid())
        .filter(|(_, x)| x.abs() > 0.9 * cfg.half_width)
        .map(|(v, _)| v.abs())
        .sum();
    if edge > 1e-8 * total {
        return Err(Error::InvalidParameter(format!(
            "u0 carries a fraction {:e} of its mass within 10% of the box edge",
            edge / total
        )));
    }
    let dx = cfg.dx();
    let omega = frequencies(cfg.half_width, n);
    let psi: Vec<Complex64> = omega.iter().map(|&w| char_exponent(&cfg.spec, w)).collect();
    // −∂ₓ in the e^{−iωx} synthesis
    let mut deriv: Vec<Complex64> = omega.iter().map(|&w| Complex64::new(0.0, w)).collect();
    deriv[n / 2] = Complex64::new(0.0, 0.0);
    if cfg.dealias {
        for (k, d) in deriv.iter_mut().enumerate() {
            let kk = if k <= n / 2 { k } else { n - k };
            if 3 * kk > n {
                *d = Complex64::new(0.0, 0.0);
            }
        }
    }
    let nonlinear = !cfg.nonlinearity.is_zero();
    let mut sp = Spectral::new(n);
    let flux = |sp: &mut Spectral, m: &[Complex64]| -> Vec<Complex64> {
        let u = sp.grid(m);
        let g: Vec<f64> = u.iter().map(|&v| cfg.nonlinearity.eval(v)).collect();
        let mut gm = sp.modes(&g);
        for (c, d) in gm.iter_mut().zip(&deriv) {
            *c *= d;
        }
        gm
    };

    let mut coeffs: HashMap<u64, EtdCoefficients> = HashMap::new();
    let mut modes = sp.modes(u0);
    let sup0 = lp_norm(u0, dx, f64::INFINITY);
    let mut traj = Trajectory {
        half_width: cfg.half_width,
        times: vec![0.0],
        snapshots: vec![u0.to_vec()],
        diagnostics: vec![Diagnostics::of(0.0, u0, dx)],
        warnings: Vec::new(),
    };
    let mut t = 0.0;
    let mut steps_done: u64 = 0;
    for &t_out in &cfg.output_times {
        loop {
            let remaining = t_out - t;
            if remaining <= 1e-12 * t_out.max(1.0) {
                break;
            }
            let h = if remaining < cfg.dt * (1.0 + 1e-9) {
                remaining
            } else {
                cfg.dt
            };
            let c = coeffs
                .entry(h.to_bits())
                .or_insert_with(|| EtdCoefficients::new(&psi, h));
            if nonlinear {
                let n0 = flux(&mut sp, &modes);
                let a: Vec<Complex64> = (0..n)
                    .map(|k| c.e[k] * modes[k] + c.f1[k] * n0[k])
                    .collect();
                let na = flux(&mut sp, &a);
                modes = (0..n).map(|k| a[k] + c.f2[k] * (na[k] - n0[k])).collect();
            } else {
                for (m, e) in modes.iter_mut().zip(&c.e) {
                    *m *= e;
                }
            }
            t += h;
            steps_done += 1;
            if nonlinear && steps_done.is_multiple_of(16) {
                let u = sp.grid(&modes);
                check_blow_up(&u, sup0, t, dx)?;
            }
        }
        t = t_out;
        let u = sp.grid(&modes);
        check_blow_up(&u, sup0, t, dx)?;
        let tail = tail_energy(&modes);
        if tail > ALIAS_WARNING && traj.warnings.is_empty() {
            traj.warnings.push(format!(
                "spectral energy above N/3 is a fraction {tail:e} of the total at t = {t}; refine N"
            ));
        }
        traj.times.push(t);
        traj.diagnostics.push(Diagnostics::of(t, &u, dx));
        traj.snapshots.push(u);
    }
    Ok(traj)
}

fn check_blow_up(u: &[f64], sup0: f64, t: f64, dx: f64) -> Result<()> {
    let s = if u.iter().all(|v| v.is_finite()) {
        lp_norm(u, dx, f64::INFINITY)
    } else {
        f64::INFINITY
    };
    if s > 2.0 * sup0 {
        return Err(Error::BlowUp { t, ratio: s / sup0 });
    }
    Ok(())
}

/// t^{(1−1/p)/α} ‖u(t) − e^{−tA}u₀‖_p at the output times, α = α₁.
pub fn asymptotics_report(
    traj: &Trajectory,
    cfg: &SolverConfig,
    p: f64,
) -> Result<Vec<(f64, f64)>> {
    check_norm_index(p)?;
    let alpha = cfg.spec.alpha_min();
    let dx = traj.dx();
    let u0 = traj.initial();
    let mut out = Vec::with_capacity(traj.times.len());
    for (&t, u) in traj.times.iter().zip(&traj.snapshots) {
        let lin = linear_evolution(u0, &cfg.spec, t, cfg.half_width);
        let diff: Vec<f64> = u.iter().zip(&lin).map(|(a, b)| a - b).collect();
        let scale = if t > 0.0 {
            t.powf((1.0 - 1.0 / p) / alpha)
        } else {
            0.0
        };
        out.push((t, scale * lp_norm(&diff, dx, p)));
    }
    Ok(out)
}

/// Least-squares slope of ln‖u(t)‖_p against ln t over t in [t_lo, t_hi].
pub fn decay_exponent(traj: &Trajectory, p: f64, t_lo: f64, t_hi: f64) -> Result<f64> {
    check_norm_index(p)?;
    let dx = traj.dx();
    let pts: Vec<(f64, f64)> = traj
        .times
        .iter()
        .zip(&traj.snapshots)
        .filter(|(&t, _)| t >= t_lo && t <= t_hi && t > 0.0)
        .map(|(&t, u)| (t.ln(), lp_norm(u, dx, p).ln()))
        .collect();
    if pts.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "fewer than two output times in [{t_lo}, {t_hi}]"
        )));
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(num / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SourceVariant {
    /// e^{−x²/4t} t^{−1/2} (K + ½∫₀^{x/(2√t)} e^{−ω²/4} dω)^{−1}.
    Printed,
    /// The Hopf–Cole source solution of u_t − u_xx + (u²)_x = 0.
    HopfCole,
}

impl SourceVariant {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Printed => "printed",
            Self::HopfCole => "hopf_cole",
        }
    }
}

/// Source solution U_M of u_t − u_xx + (u²)_x = 0 with u(0) = M δ₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BurgersSource {
    pub mass: f64,
    pub variant: SourceVariant,
    /// K(M) of the chosen variant.
    pub k: f64,
}

const SQRT_PI: f64 = 1.772_453_850_905_516;

fn printed_profile(k: f64, eta: f64) -> f64 {
    (-eta * eta / 4.0).exp() / (k + 0.5 * SQRT_PI * erf(eta / 4.0))
}

fn printed_mass(k: f64) -> f64 {
    crate::quad::gl16_composite(|eta| printed_profile(k, eta), -60.0, 60.0, 120)
}

impl BurgersSource {
    pub fn new(mass: f64, variant: SourceVariant) -> Result<Self> {
        if !(mass >= 0.0 && mass.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "source mass M = {mass} must be non-negative"
            )));
        }
        let k = match variant {
            SourceVariant::HopfCole => {
                if mass == 0.0 {
                    f64::INFINITY
                } else {
                    2.0 * SQRT_PI / -(-mass).exp_m1() - SQRT_PI
                }
            }
            SourceVariant::Printed => Self::printed_k(mass)?,
        };
        Ok(Self { mass, variant, k })
    }

    /// K(M) from ∫U_M(x, 1) dx = M. The mass stays bounded as K decreases
    /// to √π/2, so larger M have no printed source.
    fn printed_k(mass: f64) -> Result<f64> {
        if mass == 0.0 {
            return Ok(f64::INFINITY);
        }
        let k_min = 0.5 * SQRT_PI;
        let m_max = printed_mass(k_min * (1.0 + 1e-14));
        if mass >= m_max {
            return Err(Error::Domain(format!(
                "the printed source formula reaches at most mass {m_max:.6}, got {mass}"
            )));
        }
        let mut lo = k_min * (1.0 + 1e-14);
        let mut hi = 1.0;
        while printed_mass(hi) > mass {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if printed_mass(mid) > mass {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 * hi {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    pub fn eval(&self, t: f64, x: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "source solution needs t > 0, got {t}"
            )));
        }
        if self.mass == 0.0 {
            return Ok(0.0);
        }
        let st = t.sqrt();
        let gauss = (-x * x / (4.0 * t)).exp() / st;
        Ok(match self.variant {
            SourceVariant::Printed => gauss / (self.k + 0.5 * SQRT_PI * erf(x / (4.0 * st))),
            SourceVariant::HopfCole => gauss / (self.k - SQRT_PI * erf(x / (2.0 * st))),
        })
    }
}

pub fn burgers_source(mass: f64, t: f64, x: f64, variant: SourceVariant) -> Result<f64> {
    BurgersSource::new(mass, variant)?.eval(t, x)
}

fn is_classical_burgers(cfg: &SolverConfig) -> bool {
    let c = cfg.spec.components();
    c.len() == 1
        && c[0].alpha == 2.0
        && c[0].gamma == 1.0
        && matches!(cfg.nonlinearity, Nonlinearity::Burgers { c } if c == 1.0)
}

/// t^{(1−1/p)/2} ‖u(t) − U_M(t)‖_p against the Hopf–Cole source of the run's
/// mass, for the classical equation u_t − u_xx + (u²)_x = 0 only.
pub fn critical_asymptotics_report(
    traj: &Trajectory,
    cfg: &SolverConfig,
    p: f64,
) -> Result<Vec<(f64, f64)>> {
    check_norm_index(p)?;
    if !is_classical_burgers(cfg) {
        return Err(Error::NotImplemented(
            "source solutions are only available for the classical Burgers equation, spec (2,0,1) with g(u) = u^2".into(),
        ));
    }
    let src = BurgersSource::new(traj.diagnostics[0].mass, SourceVariant::HopfCole)?;
    let dx = traj.dx();
    let xs = grid_points(cfg.half_width, cfg.n_modes);
    let mut out = Vec::new();
    for (&t, u) in traj.times.iter().zip(&traj.snapshots) {
        if t == 0.0 {
            continue;
        }
        let diff = xs
            .iter()
            .zip(u)
            .map(|(&x, &v)| Ok(v - src.eval(t, x)?))
            .collect::<Result<Vec<f64>>>()?;
        out.push((t, t.powf(0.5 * (1.0 - 1.0 / p)) * lp_norm(&diff, dx, p)));
    }
    Ok(out)
}

/// Gaussian bump of the given mass, center and standard deviation.
pub fn gaussian_bump(xs: &[f64], mass: f64, center: f64, width: f64) -> Vec<f64> {
    let c = mass / (width * (2.0 * PI).sqrt());
    xs.iter()
        .map(|x| c * (-0.5 * ((x - center) / width).powi(2)).exp())
        .collect()
}
