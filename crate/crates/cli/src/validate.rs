//! The `validate` command: invariant suites with measured residuals.

use std::f64::consts::PI;
use std::fmt::Write;

use num_complex::Complex64;

use mslevy::claw::{
    gaussian_bump, grid_points, linear_evolution, linear_propagator, solve, Nonlinearity,
    SolverConfig,
};
use mslevy::moments::{ln_moment_integral, ln_stieltjes_moment, moment_series, stieltjes_weight};
use mslevy::multiscale::{
    catalog_kernel, one_sided_double, one_sided_hyper, one_sided_kernel, one_sided_meijer,
    one_sided_pair, two_sided_kernel, KernelCatalog,
};
use mslevy::oracle::{invert_fourier, MultiscaleSpec, QuadControl};
use mslevy::specfun::{bessel_k, gauss_legendre_check, hyp1f1, reflection_check, SeriesControl};
use mslevy::stable::{density_closed, density_series, Catalog, StableComponent};
use mslevy::Result;

use crate::manifest::RunManifest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Specfun,
    Stable,
    Multiscale,
    Moments,
    Claw,
    All,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub suite: &'static str,
    pub check: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl Row {
    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

struct Rows {
    suite: &'static str,
    rows: Vec<Row>,
}

impl Rows {
    fn new(suite: &'static str) -> Self {
        Self {
            suite,
            rows: Vec::new(),
        }
    }

    /// Records a residual; an evaluation error counts as an infinite one.
    fn add(&mut self, check: impl Into<String>, residual: Result<f64>, tolerance: f64) {
        let residual = match residual {
            Ok(r) if !r.is_nan() => r,
            _ => f64::INFINITY,
        };
        self.rows.push(Row {
            suite: self.suite,
            check: check.into(),
            residual,
            tolerance,
        });
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn max_over<I: IntoIterator<Item = Result<f64>>>(it: I) -> Result<f64> {
    it.into_iter().try_fold(0.0f64, |m, r| Ok(m.max(r?)))
}

fn specfun() -> Vec<Row> {
    let mut r = Rows::new("specfun");
    for (re, im) in [
        (0.3, 0.0),
        (0.5, 1.0),
        (-2.7, 0.4),
        (3.3, -2.0),
        (0.01, 5.0),
    ] {
        let z = Complex64::new(re, im);
        r.add(format!("reflection z = {z}"), reflection_check(z), 1e-12);
    }
    for (re, im, n) in [(0.35, 0.0, 2), (1.7, 0.0, 3), (0.2, 1.5, 2), (2.5, -0.7, 4)] {
        let a = Complex64::new(re, im);
        r.add(
            format!("multiplication a = {a} n = {n}"),
            gauss_legendre_check(a, n),
            1e-12,
        );
    }
    for (a, b, z) in [
        (0.5, 1.5, 2.0),
        (5.0 / 6.0, 2.0 / 3.0, -3.0),
        (1.25, 0.75, 0.4),
    ] {
        // Kummer: M(a, b, z) = e^z M(b − a, b, −z)
        let res = (|| Ok(rel(hyp1f1(a, b, z)?, z.exp() * hyp1f1(b - a, b, -z)?)))();
        r.add(format!("kummer a = {a} b = {b} z = {z}"), res, 1e-12);
    }
    for z in [0.2, 1.0, 7.5] {
        let res = bessel_k(0.5, z).map(|k| rel(k, (PI / (2.0 * z)).sqrt() * (-z).exp()));
        r.add(format!("bessel K_1/2({z})"), res, 1e-12);
    }
    r.rows
}

fn stable() -> Vec<Row> {
    let mut r = Rows::new("stable");
    let ctrl = SeriesControl::default();
    for cat in Catalog::ALL {
        let c = cat.component();
        let xs: Vec<f64> = (1..=40)
            .map(|i| 0.25 * i as f64 - if c.alpha > 1.0 { 5.0 } else { 0.0 })
            .collect();
        let res = max_over(
            xs.iter()
                .filter_map(|&x| match density_series(&c, 1.0, x, &ctrl) {
                    Ok(s) if s.low_precision() => None,
                    Ok(s) => Some(density_closed(cat, 1.0, x).map(|v| (v - s.value).abs())),
                    Err(e) => Some(Err(e)),
                }),
        );
        r.add(format!("series vs closed form {}", cat.name()), res, 1e-9);
    }
    let q = QuadControl::default();
    for (a, b) in [(1.2, 0.3), (0.7, 0.2), (1.8, -0.1)] {
        let c = StableComponent::new(a, b, 1.0).expect("admissible");
        let spec = MultiscaleSpec::single(c).expect("admissible");
        // points where the series reports lost precision are skipped
        let res = max_over([0.6, 1.5, 3.0].map(|x| {
            let s = density_series(&c, 1.0, x, &ctrl)?;
            if s.low_precision() {
                return Ok(0.0);
            }
            Ok((s.value - invert_fourier(&spec, 1.0, x, &q)?).abs())
        }));
        r.add(format!("series vs oracle ({a} {b})"), res, 1e-8);
        let t = 2.5f64;
        let res = max_over([0.6, 1.5, 3.0].map(|x| {
            let lhs = density_series(&c, t, x, &ctrl)?.value;
            let rhs =
                t.powf(-1.0 / a) * density_series(&c, 1.0, x * t.powf(-1.0 / a), &ctrl)?.value;
            Ok(rel(lhs, rhs))
        }));
        r.add(format!("self-similarity ({a} {b})"), res, 1e-12);
    }
    r.rows
}

fn multiscale() -> Vec<Row> {
    let mut r = Rows::new("multiscale");
    let ctrl = SeriesControl::default();
    let q = QuadControl::default();
    for k in KernelCatalog::ALL {
        let (c1, c2) = k.components();
        let spec = MultiscaleSpec::new(vec![c1, c2]).expect("admissible");
        let xs: Vec<f64> = if k.is_one_sided() {
            vec![0.2, 0.7, 1.5, 4.0, 9.0]
        } else {
            vec![-4.0, -1.3, 0.0, 0.8, 2.5, 5.0]
        };
        let mut cat = Vec::new();
        let mut ser = Vec::new();
        for &x in &xs {
            let o = invert_fourier(&spec, 1.0, x, &q);
            cat.push(
                o.clone()
                    .and_then(|o| Ok((catalog_kernel(k, 1.0, x)? - o).abs())),
            );
            let s = if k.is_one_sided() {
                one_sided_kernel(c1.alpha, c2.alpha, 1.0, x, &ctrl)
            } else {
                two_sided_kernel(c1, c2, 1.0, x, &ctrl)
            };
            ser.push(o.and_then(|o| Ok((s?.value - o).abs())));
        }
        r.add(
            format!("{} catalog vs oracle", k.name()),
            max_over(cat),
            1e-6,
        );
        r.add(
            format!("{} series vs oracle", k.name()),
            max_over(ser),
            1e-6,
        );
    }
    for (a1, a2) in [(0.5, 1.0 / 3.0), (2.0 / 3.0, 1.0 / 3.0)] {
        let p = one_sided_pair(a1, a2).expect("admissible");
        // pairwise gaps in units of the combined error estimate
        let res = max_over([0.5, 2.0, 8.0].map(|x| {
            let d = one_sided_double(&p, 1.0, x, &ctrl)?;
            let h = one_sided_hyper(&p, 1.0, x, &ctrl)?;
            let m = one_sided_meijer(&p, 1.0, x, &ctrl)?;
            let g = |a: f64, ea: f64, b: f64, eb: f64| (a - b).abs() / (ea + eb + 1e-15);
            Ok(g(d.value, d.err_est, h.value, h.err_est)
                .max(g(d.value, d.err_est, m.value, m.err_est))
                .max(g(h.value, h.err_est, m.value, m.err_est)))
        }));
        r.add(
            format!("forms agree ({a1:.4} {a2:.4}) gap / err_est"),
            res,
            1.0,
        );
    }
    r.rows
}

fn moments() -> Vec<Row> {
    let mut r = Rows::new("moments");
    let ctrl = SeriesControl::default();
    let hh = one_sided_pair(0.5, 0.5).expect("admissible");
    for (a1, a2) in [(0.5, 0.5), (0.5, 1.0 / 3.0), (2.0 / 3.0, 1.0 / 3.0)] {
        let p = one_sided_pair(a1, a2).expect("admissible");
        let name = format!("({a1:.4} {a2:.4})");
        r.add(
            format!("rho(0) = 1 {name}"),
            moment_series(&p, 0.0, 1.0, &ctrl).map(|v| (v - 1.0).abs()),
            0.0,
        );
        let res = max_over([-0.5, -1.0, -3.0].map(|mu| {
            Ok(rel(
                moment_series(&p, mu, 1.0, &ctrl)?,
                ln_moment_integral(&p, mu, 1.0)?.exp(),
            ))
        }));
        r.add(format!("series vs Mellin integral {name}"), res, 1e-9);
        let rho: Result<Vec<f64>> = (0..5u32)
            .map(|n| ln_stieltjes_moment(&p, n, 1.0).map(f64::exp))
            .collect();
        let res = rho.map(|m| {
            let det = m[1] * m[3] - m[2] * m[2];
            let det0 = m[0] * m[2] - m[1] * m[1];
            // a negative Hankel minor is reported as its size
            (-det.min(det0)).max(0.0)
        });
        r.add(format!("Hankel positivity {name}"), res, 0.0);
    }
    r.add(
        "rho(1) = 1/2 for (0.5 0.5)",
        ln_stieltjes_moment(&hh, 1, 1.0).map(|l| (l.exp() - 0.5).abs()),
        1e-14,
    );
    let res = max_over([0.3, 1.0, 2.5].map(|x| {
        let e = 1.0 / (PI * x).sqrt() * (-x).exp();
        Ok(rel(stieltjes_weight(&hh, 1.0, x, &ctrl)?, e))
    }));
    r.add("weight closed form (0.5 0.5)", res, 1e-12);
    r.rows
}

fn claw() -> Vec<Row> {
    let mut r = Rows::new("claw");
    let c = |a, b| StableComponent::new(a, b, 1.0).expect("admissible");
    let spec = MultiscaleSpec::new(vec![c(1.5, -0.5), c(2.0, 0.0)]).expect("admissible");
    let (n, l) = (256, 40.0);
    let (p1, p2, p3) = (
        linear_propagator(&spec, 0.3, n, l),
        linear_propagator(&spec, 0.5, n, l),
        linear_propagator(&spec, 0.8, n, l),
    );
    let semi = p1
        .iter()
        .zip(&p2)
        .zip(&p3)
        .map(|((a, b), c)| (a * b - c).norm())
        .fold(0.0, f64::max);
    r.add("propagator semigroup", Ok(semi), 1e-14);

    let heat = MultiscaleSpec::single(c(2.0, 0.0)).expect("admissible");
    let xs = grid_points(l, 512);
    let u0 = gaussian_bump(&xs, 1.0, 0.0, 1.0);
    let u1 = linear_evolution(&u0, &heat, 1.0, l);
    // a Gaussian of variance 1 under ∂t = ∂xx has variance 3 at t = 1
    let e = xs
        .iter()
        .zip(&u1)
        .map(|(x, u)| (u - (-x * x / 6.0).exp() / (6.0 * PI).sqrt()).abs())
        .fold(0.0, f64::max);
    r.add("heat closed form", Ok(e), 1e-12);

    let mut cfg = SolverConfig::new(40.0, 512, 0.01, 2.0, heat, Nonlinearity::Burgers { c: 1.0 });
    cfg.output_times = vec![0.5, 1.0, 2.0];
    let u0 = gaussian_bump(&cfg.grid(), 1.0, 0.0, 1.0);
    let t = solve(&u0, &cfg);
    r.add(
        "Burgers mass drift",
        t.as_ref().map(|t| t.mass_drift()).map_err(Clone::clone),
        1e-10,
    );
    let growth = t.map(|t| {
        t.diagnostics
            .windows(2)
            .map(|w| (w[1].l1 - w[0].l1).max(w[1].linf - w[0].linf))
            .fold(0.0f64, f64::max)
    });
    r.add("Burgers L1 and sup contraction", growth, 1e-10);
    r.rows
}

pub fn run(suite: Suite) -> Vec<Row> {
    let all = [
        Suite::Specfun,
        Suite::Stable,
        Suite::Multiscale,
        Suite::Moments,
        Suite::Claw,
    ];
    let picked: Vec<Suite> = if suite == Suite::All {
        all.to_vec()
    } else {
        vec![suite]
    };
    picked
        .into_iter()
        .flat_map(|s| match s {
            Suite::Specfun => specfun(),
            Suite::Stable => stable(),
            Suite::Multiscale => multiscale(),
            Suite::Moments => moments(),
            Suite::Claw => claw(),
            Suite::All => unreachable!(),
        })
        .collect()
}

pub fn report(suite: Suite, rows: &[Row]) -> String {
    let m = RunManifest::new("validate", "validate-csv/1")
        .param("suite", format!("{suite:?}").to_lowercase())
        .column("residual", "per check")
        .column("tolerance", "plumbing");
    let mut s = m.header();
    s.push_str("suite,check,residual,tolerance,status\n");
    for r in rows {
        let status = if r.passed() { "pass" } else { "fail" };
        let _ = writeln!(
            s,
            "{},{},{:e},{:e},{status}",
            r.suite, r.check, r.residual, r.tolerance
        );
    }
    let failed = rows.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(s, "# {} checks, {failed} failed", rows.len());
    s
}
