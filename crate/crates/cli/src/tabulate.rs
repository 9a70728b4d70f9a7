//! The `density` and `kernel` commands.

use std::collections::BTreeMap;
use std::fmt::Write;

use mslevy::moments::{convexity_check, default_convexity_grid};
use mslevy::multiscale::{
    catalog_kernel, one_sided_kernel, one_sided_pair, two_sided_kernel, KernelCatalog,
};
use mslevy::oracle::{invert_fourier, MultiscaleSpec, QuadControl};
use mslevy::specfun::SeriesControl;
use mslevy::stable::{density_closed, density_series, Catalog, StableComponent};
use mslevy::Error;

use crate::error::{CliError, CliResult, Context};
use crate::manifest::RunManifest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DensityMethod {
    Series,
    Closed,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum KernelMethod {
    Series,
    Catalog,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
}

/// n evenly spaced points from x0 to x1.
pub fn grid(x0: f64, x1: f64, n: usize) -> CliResult<Vec<f64>> {
    if n == 0 {
        return Err(CliError::usage("empty grid: --n must be at least 1"));
    }
    if !x0.is_finite() || !x1.is_finite() || x1 < x0 {
        return Err(CliError::usage(format!("invalid grid [{x0}, {x1}]")));
    }
    if n == 1 {
        return Ok(vec![x0]);
    }
    let h = (x1 - x0) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i + 1 == n { x1 } else { x0 + h * i as f64 })
        .collect())
}

fn stepped(x0: f64, step: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| x0 + step * i as f64).collect()
}

fn component(alpha: f64, beta: f64, gamma: f64) -> CliResult<StableComponent> {
    StableComponent::new(alpha, beta, gamma).map_err(|e| CliError::usage(e.to_string()))
}

fn tally(ids: &[&'static str]) -> String {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for id in ids {
        *counts.entry(id).or_default() += 1;
    }
    let parts: Vec<String> = counts.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    parts.join(",")
}

fn series_accepted(value: f64, err: f64) -> bool {
    value.is_finite() && err <= 1e-10f64.max(1e-9 * value.abs())
}

fn check_t(t: f64) -> CliResult<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(CliError::usage(format!("t = {t} must be positive")))
    }
}

pub struct DensityArgs {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub t: f64,
    pub x0: f64,
    pub x1: f64,
    pub n: usize,
    pub method: DensityMethod,
}

pub fn density(a: &DensityArgs) -> CliResult<String> {
    let c = component(a.alpha, a.beta, a.gamma)?;
    check_t(a.t)?;
    let xs = grid(a.x0, a.x1, a.n)?;
    let ctrl = SeriesControl::default();
    let q = QuadControl::default();
    let spec = MultiscaleSpec::single(c).map_err(|e| CliError::usage(e.to_string()))?;
    let oracle = |x: f64| -> CliResult<(f64, f64, &'static str)> {
        let v =
            invert_fourier(&spec, a.t, x, &q).context(|| format!("invert_fourier at x = {x}"))?;
        Ok((v, q.tol, "oracle"))
    };
    let catalog = Catalog::for_component(&StableComponent { gamma: 1.0, ..c });
    let mut rows = Vec::with_capacity(xs.len());
    for &x in &xs {
        let r = match a.method {
            DensityMethod::Closed => {
                let cat = catalog.ok_or_else(|| {
                    CliError::usage(format!(
                        "no closed form for alpha = {}, beta = {}",
                        a.alpha, a.beta
                    ))
                })?;
                let v = density_closed(cat, a.t * c.gamma, x)
                    .context(|| format!("closed form {} at x = {x}", cat.name()))?;
                (v, 0.0, cat.name())
            }
            DensityMethod::Series => match density_series(&c, a.t, x, &ctrl) {
                Ok(s) if !s.low_precision() && series_accepted(s.value, s.err_est) => {
                    (s.value, s.err_est, "series")
                }
                Ok(_)
                | Err(Error::Regime(_))
                | Err(Error::NonConvergence { .. })
                | Err(Error::Overflow(_)) => oracle(x)?,
                Err(e) => return Err(CliError::numeric(&format!("density_series at x = {x}"), e)),
            },
            DensityMethod::Oracle => oracle(x)?,
        };
        rows.push((x, r.0, r.1, r.2));
    }
    let ids: Vec<&str> = rows.iter().map(|r| r.3).collect();
    let m = RunManifest::new("density", "density-csv/1")
        .param("alpha", a.alpha)
        .param("beta", a.beta)
        .param("gamma", a.gamma)
        .param("t", a.t)
        .param("x0", a.x0)
        .param("x1", a.x1)
        .param("n", a.n)
        .param("method", format!("{:?}", a.method).to_lowercase())
        .column("x", "plumbing")
        .column("value", tally(&ids))
        .column("err_est", tally(&ids));
    let mut s = m.header();
    s.push_str("x,value,err_est\n");
    for (x, v, e, _) in rows {
        let _ = writeln!(s, "{x},{v:e},{e:e}");
    }
    Ok(s)
}

pub struct KernelArgs {
    pub first: (f64, f64, f64),
    pub second: (f64, f64, f64),
    pub t: f64,
    pub x0: f64,
    pub x1: f64,
    pub n: usize,
    pub method: KernelMethod,
}

fn kernel_at(
    c1: StableComponent,
    c2: StableComponent,
    t: f64,
    x: f64,
    method: KernelMethod,
) -> CliResult<(f64, f64, &'static str)> {
    let ctrl = SeriesControl::default();
    match method {
        KernelMethod::Series => {
            let unit = c1.gamma == 1.0 && c2.gamma == 1.0;
            let k = if unit && c1.is_one_sided() && c2.is_one_sided() {
                one_sided_kernel(c1.alpha, c2.alpha, t, x, &ctrl)
            } else {
                two_sided_kernel(c1, c2, t, x, &ctrl)
            };
            let k = k.context(|| format!("kernel series at x = {x}"))?;
            Ok((k.value, k.err_est, k.formula_id.name()))
        }
        KernelMethod::Catalog => {
            let cat = catalog_for(c1, c2)?;
            let v = catalog_kernel(cat, t, x)
                .context(|| format!("catalog kernel {} at x = {x}", cat.name()))?;
            Ok((v, 0.0, cat.name()))
        }
        KernelMethod::Oracle => {
            let spec =
                MultiscaleSpec::new(vec![c1, c2]).map_err(|e| CliError::usage(e.to_string()))?;
            let q = QuadControl::default();
            let v =
                invert_fourier(&spec, t, x, &q).context(|| format!("invert_fourier at x = {x}"))?;
            Ok((v, q.tol, "oracle"))
        }
    }
}

fn catalog_for(c1: StableComponent, c2: StableComponent) -> CliResult<KernelCatalog> {
    let same = |a: StableComponent, b: StableComponent| {
        (a.alpha - b.alpha).abs() < 1e-12
            && (a.beta - b.beta).abs() < 1e-12
            && (a.gamma - b.gamma).abs() < 1e-14
    };
    KernelCatalog::ALL
        .into_iter()
        .find(|k| {
            let (d1, d2) = k.components();
            (same(c1, d1) && same(c2, d2)) || (same(c1, d2) && same(c2, d1))
        })
        .ok_or_else(|| CliError::usage(format!("no catalog kernel for the pair {c1} + {c2}")))
}

pub fn kernel(a: &KernelArgs) -> CliResult<String> {
    let c1 = component(a.first.0, a.first.1, a.first.2)?;
    let c2 = component(a.second.0, a.second.1, a.second.2)?;
    check_t(a.t)?;
    let xs = grid(a.x0, a.x1, a.n)?;
    let mut rows = Vec::with_capacity(xs.len());
    for &x in &xs {
        let (v, e, id) = kernel_at(c1, c2, a.t, x, a.method)?;
        rows.push((x, v, e, id));
    }
    let ids: Vec<&str> = rows.iter().map(|r| r.3).collect();
    let m = RunManifest::new("kernel", "kernel-csv/1")
        .param("alpha1", a.first.0)
        .param("beta1", a.first.1)
        .param("gamma1", a.first.2)
        .param("alpha2", a.second.0)
        .param("beta2", a.second.1)
        .param("gamma2", a.second.2)
        .param("t", a.t)
        .param("x0", a.x0)
        .param("x1", a.x1)
        .param("n", a.n)
        .param("method", format!("{:?}", a.method).to_lowercase())
        .column("x", "plumbing")
        .column("value", tally(&ids))
        .column("err_est", tally(&ids));
    let mut s = m.header();
    s.push_str("x,value,err_est\n");
    for (x, v, e, _) in rows {
        let _ = writeln!(s, "{x},{v:e},{e:e}");
    }
    Ok(s)
}

pub fn figure(fig: Figure, t: f64, method: KernelMethod) -> CliResult<String> {
    check_t(t)?;
    let method_name = format!("{method:?}").to_lowercase();
    let mut m = RunManifest::new("kernel", "figure-csv/1")
        .param("figure", format!("{fig:?}").to_lowercase());
    let mut s = String::new();
    match fig {
        Figure::Fig1 | Figure::Fig2 => {
            let (cases, xs) = if fig == Figure::Fig1 {
                (
                    [
                        KernelCatalog::HalfHalf,
                        KernelCatalog::HalfThird,
                        KernelCatalog::ThirdTwoThirds,
                    ],
                    stepped(0.1, 0.05, 199),
                )
            } else {
                (
                    [
                        KernelCatalog::BiGauss,
                        KernelCatalog::GaussLevy,
                        KernelCatalog::GaussThreeHalf,
                    ],
                    stepped(-6.0, 0.05, 241),
                )
            };
            m = m
                .param("t", t)
                .param("method", &method_name)
                .column("x", "plumbing");
            let mut cols = Vec::new();
            for (label, k) in ["I", "II", "III"].into_iter().zip(cases) {
                let (c1, c2) = k.components();
                let mut ids = Vec::new();
                let mut vals = Vec::new();
                for &x in &xs {
                    let (v, _, id) = kernel_at(c1, c2, t, x, method)?;
                    vals.push(v);
                    ids.push(id);
                }
                m = m.column(label, format!("{} {}", k.name(), tally(&ids)));
                cols.push(vals);
            }
            s.push_str(&m.header());
            s.push_str("x,I,II,III\n");
            for (i, x) in xs.iter().enumerate() {
                let _ = writeln!(s, "{x},{:e},{:e},{:e}", cols[0][i], cols[1][i], cols[2][i]);
            }
        }
        Figure::Fig3 => {
            let pair =
                one_sided_pair(2.0 / 3.0, 1.0 / 3.0).map_err(|e| CliError::usage(e.to_string()))?;
            let ys = default_convexity_grid();
            let ctrl = SeriesControl::default();
            let ts = [0.8, 1.0, 1.2];
            m = m.column("y", "plumbing");
            let mut cols = Vec::new();
            for tt in ts {
                let r = convexity_check(&pair, tt, &ys, &ctrl)
                    .context(|| format!("convexity_check at t = {tt}"))?;
                m = m.column(&format!("t={tt}"), "convexity");
                cols.push(r.values);
            }
            s.push_str(&m.header());
            s.push_str("y,t=0.8,t=1,t=1.2\n");
            for (i, y) in ys.iter().enumerate() {
                let _ = writeln!(s, "{y},{:e},{:e},{:e}", cols[0][i], cols[1][i], cols[2][i]);
            }
        }
    }
    Ok(s)
}
