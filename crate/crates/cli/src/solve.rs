//! The `solve` command and its TOML run configuration.

use std::fmt::Write;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use mslevy::claw::{
    asymptotics_report, critical_asymptotics_report, decay_exponent, gaussian_bump, solve,
    BurgersSource, Nonlinearity, SolverConfig, SourceVariant,
};
use mslevy::oracle::MultiscaleSpec;
use mslevy::stable::StableComponent;

use crate::error::{CliError, CliResult, Context};
use crate::manifest::{RunManifest, VERSION};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub domain: Domain,
    pub time: Time,
    pub operator: Vec<Component>,
    pub nonlinearity: NonlinearityConfig,
    pub initial: Initial,
    #[serde(default)]
    pub solver: Solver,
    #[serde(default)]
    pub report: Report,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Domain {
    pub half_width: f64,
    pub n_modes: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Time {
    pub dt: f64,
    pub t_end: f64,
    pub output_every: Option<f64>,
    pub output_times: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub alpha: f64,
    #[serde(default)]
    pub beta: f64,
    #[serde(default = "one")]
    pub gamma: f64,
}

fn one() -> f64 {
    1.0
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NonlinearityConfig {
    Zero,
    Power {
        r: f64,
        #[serde(default = "one")]
        c: f64,
    },
    Burgers {
        #[serde(default = "one")]
        c: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Printed,
    #[default]
    HopfCole,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Initial {
    Gaussian {
        mass: f64,
        #[serde(default)]
        center: f64,
        width: f64,
    },
    BurgersSource {
        mass: f64,
        t0: f64,
        #[serde(default)]
        variant: Variant,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Solver {
    #[serde(default = "yes")]
    pub dealias: bool,
    #[serde(default = "default_budget")]
    pub tail_budget: f64,
}

fn default_budget() -> f64 {
    1e-8
}

impl Default for Solver {
    fn default() -> Self {
        Self {
            dealias: true,
            tail_budget: default_budget(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Snapshots {
    #[default]
    All,
    Final,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    /// Lp exponents as strings, "inf" for the sup norm.
    #[serde(default = "default_norms")]
    pub norms: Vec<String>,
    #[serde(default)]
    pub asymptotics: bool,
    #[serde(default)]
    pub critical: bool,
    /// Window of the decay-exponent fits; defaults to the last decade of the run.
    pub fit_window: Option<[f64; 2]>,
    #[serde(default)]
    pub snapshots: Snapshots,
}

fn default_norms() -> Vec<String> {
    vec!["1".into(), "2".into(), "inf".into()]
}

impl Default for Report {
    fn default() -> Self {
        Self {
            norms: default_norms(),
            asymptotics: false,
            critical: false,
            fit_window: None,
            snapshots: Snapshots::All,
        }
    }
}

fn parse_norm(s: &str) -> CliResult<f64> {
    let p = if s == "inf" {
        f64::INFINITY
    } else {
        s.parse().unwrap_or(f64::NAN)
    };
    if p >= 1.0 {
        Ok(p)
    } else {
        Err(CliError::usage(format!(
            "norm exponent `{s}` must be a number >= 1 or \"inf\""
        )))
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::usage(format!("invalid config: {e}")))
    }

    pub fn output_times(&self) -> CliResult<Vec<f64>> {
        let t = &self.time;
        match (&t.output_times, t.output_every) {
            (Some(_), Some(_)) => Err(CliError::usage(
                "set only one of time.output_times and time.output_every",
            )),
            (Some(v), None) => Ok(v.clone()),
            (None, Some(h)) => {
                if !(h > 0.0) {
                    return Err(CliError::usage(format!(
                        "time.output_every = {h} must be positive"
                    )));
                }
                let n = (t.t_end / h + 1e-9).floor() as usize;
                let mut v: Vec<f64> = (1..=n).map(|k| h * k as f64).collect();
                if v.last().is_none_or(|&l| l < t.t_end - 1e-12 * t.t_end) {
                    v.push(t.t_end);
                }
                Ok(v)
            }
            (None, None) => Ok(vec![t.t_end]),
        }
    }

    pub fn solver_config(&self) -> CliResult<SolverConfig> {
        let comps = self
            .operator
            .iter()
            .map(|c| StableComponent::new(c.alpha, c.beta, c.gamma))
            .collect::<mslevy::Result<Vec<_>>>()
            .and_then(MultiscaleSpec::new)
            .map_err(|e| CliError::usage(format!("invalid operator: {e}")))?;
        let g = match self.nonlinearity {
            NonlinearityConfig::Zero => Nonlinearity::Zero,
            NonlinearityConfig::Power { r, c } => Nonlinearity::Power { r, c },
            NonlinearityConfig::Burgers { c } => Nonlinearity::Burgers { c },
        };
        let mut cfg = SolverConfig::new(
            self.domain.half_width,
            self.domain.n_modes,
            self.time.dt,
            self.time.t_end,
            comps,
            g,
        );
        cfg.output_times = self.output_times()?;
        cfg.dealias = self.solver.dealias;
        cfg.tail_budget = self.solver.tail_budget;
        cfg.validate()
            .map_err(|e| CliError::usage(format!("invalid config: {e}")))?;
        Ok(cfg)
    }

    pub fn initial_data(&self, cfg: &SolverConfig) -> CliResult<Vec<f64>> {
        let xs = cfg.grid();
        match self.initial {
            Initial::Gaussian {
                mass,
                center,
                width,
            } => {
                if !(width > 0.0) {
                    return Err(CliError::usage(format!(
                        "initial.width = {width} must be positive"
                    )));
                }
                Ok(gaussian_bump(&xs, mass, center, width))
            }
            Initial::BurgersSource { mass, t0, variant } => {
                let v = match variant {
                    Variant::Printed => SourceVariant::Printed,
                    Variant::HopfCole => SourceVariant::HopfCole,
                };
                let s = BurgersSource::new(mass, v).context(|| "burgers_source".into())?;
                xs.iter()
                    .map(|&x| s.eval(t0, x))
                    .collect::<mslevy::Result<Vec<_>>>()
                    .context(|| "burgers_source".into())
            }
        }
    }
}

fn norm_label(p: f64) -> String {
    if p.is_infinite() {
        "inf".into()
    } else {
        format!("{p}")
    }
}

fn finite(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

fn gap_table(
    norms: &[f64],
    f: impl Fn(f64) -> mslevy::Result<Vec<(f64, f64)>>,
    what: &str,
) -> CliResult<Vec<Vec<(f64, f64)>>> {
    norms
        .iter()
        .map(|&p| f(p).context(|| format!("{what} for p = {}", norm_label(p))))
        .collect()
}

fn table_csv(m: &RunManifest, prefix: &str, norms: &[f64], cols: &[Vec<(f64, f64)>]) -> String {
    let mut s = m.header();
    s.push('t');
    for &p in norms {
        let _ = write!(s, ",{prefix}_p{}", norm_label(p));
    }
    s.push('\n');
    for i in 0..cols.first().map_or(0, Vec::len) {
        let _ = write!(s, "{}", cols[0][i].0);
        for c in cols {
            let _ = write!(s, ",{:e}", c[i].1);
        }
        s.push('\n');
    }
    s
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::io(&path.display().to_string(), e))
}

/// Runs the configured solve and writes its outputs into `out`. Returns a
/// one-line summary.
pub fn run(config_path: &Path, out: &Path) -> CliResult<String> {
    let text = fs::read_to_string(config_path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", config_path.display())))?;
    let rc = RunConfig::parse(&text)?;
    let norms = rc
        .report
        .norms
        .iter()
        .map(|s| parse_norm(s))
        .collect::<CliResult<Vec<_>>>()?;
    let cfg = rc.solver_config()?;
    let u0 = rc.initial_data(&cfg)?;
    let traj = solve(&u0, &cfg).context(|| "claw::solve".into())?;

    fs::create_dir_all(out).map_err(|e| CliError::io(&out.display().to_string(), e))?;
    let echo = serde_json::to_string(&rc).expect("config serializes");
    let base = |format: &str| RunManifest::new("solve", format).param("config", &echo);

    let snaps: Vec<usize> = match rc.report.snapshots {
        Snapshots::All => (0..traj.times.len()).collect(),
        Snapshots::Final => vec![traj.times.len() - 1],
        Snapshots::None => vec![],
    };
    for i in snaps {
        let m = base("snapshot-csv/1")
            .column("x", "plumbing")
            .column("u", "etd_rk2");
        write(
            &out.join(format!("snapshot_{i:04}.csv")),
            &(m.header() + &traj.snapshot_csv(i)),
        )?;
    }

    let m = base("diagnostics-csv/1").column("t", "plumbing");
    let m = ["mass", "l1", "l2", "linf", "min", "max"]
        .iter()
        .fold(m, |m, c| m.column(c, "quadrature"));
    let mut s = m.header();
    s.push_str("t,mass,l1,l2,linf,min,max\n");
    for d in &traj.diagnostics {
        let _ = writeln!(
            s,
            "{},{:e},{:e},{:e},{:e},{:e},{:e}",
            d.t, d.mass, d.l1, d.l2, d.linf, d.min, d.max
        );
    }
    write(&out.join("diagnostics.csv"), &s)?;

    let (t_lo, t_hi) = match rc.report.fit_window {
        Some([a, b]) => (a, b),
        None => (0.1 * cfg.t_end, cfg.t_end),
    };
    let mut exps = serde_json::Map::new();
    for &p in &norms {
        let v = decay_exponent(&traj, p, t_lo, t_hi)
            .ok()
            .map_or(Value::Null, finite);
        exps.insert(norm_label(p), v);
    }

    let mut metrics = json!({
        "format": "mslevy-metrics/1",
        "version": VERSION,
        "command": "solve",
        "config": serde_json::to_value(&rc).expect("config serializes"),
        "mass_drift": finite(traj.mass_drift()),
        "final": {
            "t": traj.diagnostics.last().map(|d| d.t),
            "mass": traj.diagnostics.last().map(|d| finite(d.mass)),
            "linf": traj.diagnostics.last().map(|d| finite(d.linf)),
        },
        "decay_fit_window": [t_lo, t_hi],
        "decay_exponents": exps,
        "warnings": traj.warnings,
    });

    let mut tables = vec![];
    if rc.report.asymptotics {
        tables.push((
            "scaled_gap",
            "asymptotics.csv",
            gap_table(
                &norms,
                |p| asymptotics_report(&traj, &cfg, p),
                "asymptotics_report",
            )?,
        ));
    }
    if rc.report.critical {
        tables.push((
            "source_gap",
            "critical.csv",
            gap_table(
                &norms,
                |p| critical_asymptotics_report(&traj, &cfg, p),
                "critical_asymptotics_report",
            )?,
        ));
    }
    for (prefix, file, cols) in tables {
        let mut m = base(&format!("{prefix}-csv/1")).column("t", "plumbing");
        for &p in &norms {
            m = m.column(&format!("{prefix}_p{}", norm_label(p)), prefix);
        }
        write(&out.join(file), &table_csv(&m, prefix, &norms, &cols))?;
        let mut obj = serde_json::Map::new();
        obj.insert(
            "t".into(),
            json!(cols[0].iter().map(|r| r.0).collect::<Vec<_>>()),
        );
        for (&p, c) in norms.iter().zip(&cols) {
            obj.insert(
                norm_label(p),
                Value::Array(c.iter().map(|r| finite(r.1)).collect()),
            );
        }
        metrics[prefix] = Value::Object(obj);
    }
    let text = serde_json::to_string_pretty(&metrics).expect("metrics serialize") + "\n";
    write(&out.join("metrics.json"), &text)?;
    Ok(format!(
        "{} outputs to t = {}, mass drift {:.1e}, {} warnings",
        traj.times.len(),
        cfg.t_end,
        traj.mass_drift(),
        traj.warnings.len()
    ))
}
