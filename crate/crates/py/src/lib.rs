//! Python bindings: densities, kernels, moments and the solver.

use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use mslevy::claw::{self, Nonlinearity, SolverConfig, SourceVariant};
use mslevy::moments;
use mslevy::multiscale::{self, KernelCatalog};
use mslevy::oracle::{invert_fourier, MultiscaleSpec, QuadControl};
use mslevy::specfun::SeriesControl;
use mslevy::stable::{self, Catalog};
use mslevy::Error;

create_exception!(pymslevy, BlowUpError, PyRuntimeError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InvalidParameter(_)
        | Error::Domain(_)
        | Error::GridMismatch(_)
        | Error::Parse(_) => PyValueError::new_err(e.to_string()),
        Error::BlowUp { .. } => BlowUpError::new_err(e.to_string()),
        Error::NotImplemented(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyArithmeticError::new_err(e.to_string()),
    }
}

trait IntoPy<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for mslevy::Result<T> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

/// A stable component (α, β, γ) with exponent −γ|ω|^α e^{iπβ sgn ω/2}.
#[pyclass(name = "StableComponent", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyComponent {
    inner: stable::StableComponent,
}

#[pymethods]
impl PyComponent {
    #[new]
    #[pyo3(signature = (alpha, beta = 0.0, gamma = 1.0))]
    fn new(alpha: f64, beta: f64, gamma: f64) -> PyResult<Self> {
        Ok(Self {
            inner: stable::StableComponent::new(alpha, beta, gamma).py_err()?,
        })
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.inner.beta
    }

    #[getter]
    fn gamma(&self) -> f64 {
        self.inner.gamma
    }

    fn is_one_sided(&self) -> bool {
        self.inner.is_one_sided()
    }

    fn reflect(&self) -> Self {
        Self {
            inner: self.inner.reflect(),
        }
    }

    /// Density at (t, x): catalog closed form when one exists, else the series.
    fn density(&self, t: f64, x: f64) -> PyResult<f64> {
        stable::density(&self.inner, t, x, &SeriesControl::default()).py_err()
    }

    /// Series value with its error estimate and cancellation factor.
    fn density_series(&self, t: f64, x: f64) -> PyResult<(f64, f64, f64)> {
        let s = stable::density_series(&self.inner, t, x, &SeriesControl::default()).py_err()?;
        Ok((s.value, s.err_est, s.cancellation))
    }

    fn __repr__(&self) -> String {
        format!(
            "StableComponent(alpha={}, beta={}, gamma={})",
            self.inner.alpha, self.inner.beta, self.inner.gamma
        )
    }
}

fn spec_of(components: &[PyComponent]) -> PyResult<MultiscaleSpec> {
    MultiscaleSpec::new(components.iter().map(|c| c.inner).collect()).py_err()
}

/// Printed closed form of a catalog density by name.
#[pyfunction]
fn density_closed(name: &str, t: f64, x: f64) -> PyResult<f64> {
    let cat: Catalog = name.parse().py_err()?;
    stable::density_closed(cat, t, x).py_err()
}

/// Fourier-inversion density of the sum of the given components.
#[pyfunction]
#[pyo3(signature = (components, t, x, tol = 1e-10))]
fn oracle_density(components: Vec<PyComponent>, t: f64, x: f64, tol: f64) -> PyResult<f64> {
    let q = QuadControl {
        tol,
        ..QuadControl::default()
    };
    invert_fourier(&spec_of(&components)?, t, x, &q).py_err()
}

/// Two-sided kernel H(t, x); returns (value, err_est, formula_id).
#[pyfunction]
fn two_sided_kernel(
    c1: PyComponent,
    c2: PyComponent,
    t: f64,
    x: f64,
) -> PyResult<(f64, f64, &'static str)> {
    let k = multiscale::two_sided_kernel(c1.inner, c2.inner, t, x, &SeriesControl::default())
        .py_err()?;
    Ok((k.value, k.err_est, k.formula_id.name()))
}

/// One-sided kernel h(t, x) of two exponents in (0, 1); returns (value, err_est, formula_id).
#[pyfunction]
fn one_sided_kernel(
    alpha1: f64,
    alpha2: f64,
    t: f64,
    x: f64,
) -> PyResult<(f64, f64, &'static str)> {
    let k =
        multiscale::one_sided_kernel(alpha1, alpha2, t, x, &SeriesControl::default()).py_err()?;
    Ok((k.value, k.err_est, k.formula_id.name()))
}

#[pyfunction]
fn catalog_kernel(name: &str, t: f64, x: f64) -> PyResult<f64> {
    let k: KernelCatalog = name.parse().py_err()?;
    multiscale::catalog_kernel(k, t, x).py_err()
}

/// Mellin moment E[X^μ] of the one-sided pair.
#[pyfunction]
fn moment(alpha1: f64, alpha2: f64, mu: f64, t: f64) -> PyResult<f64> {
    let p = multiscale::one_sided_pair(alpha1, alpha2).py_err()?;
    moments::moment(&p, mu, t, &SeriesControl::default()).py_err()
}

/// ln ρ(n), the Stieltjes moment of order n.
#[pyfunction]
fn ln_stieltjes_moment(alpha1: f64, alpha2: f64, n: u32, t: f64) -> PyResult<f64> {
    let p = multiscale::one_sided_pair(alpha1, alpha2).py_err()?;
    moments::ln_stieltjes_moment(&p, n, t).py_err()
}

#[pyfunction]
#[pyo3(signature = (alpha1, alpha2, t = 1.0, n_max = 1000))]
fn carleman<'py>(
    py: Python<'py>,
    alpha1: f64,
    alpha2: f64,
    t: f64,
    n_max: u32,
) -> PyResult<Bound<'py, PyDict>> {
    let p = multiscale::one_sided_pair(alpha1, alpha2).py_err()?;
    let r = moments::carleman_diagnostic(&p, t, n_max, &SeriesControl::default()).py_err()?;
    let d = PyDict::new(py);
    d.set_item("ln_rho", r.ln_rho)?;
    d.set_item("terms", r.terms)?;
    d.set_item("partial_sums", r.partial_sums)?;
    d.set_item("exponent", r.exponent)?;
    d.set_item("verdict", r.verdict.name())?;
    Ok(d)
}

#[pyfunction]
fn grid_points(half_width: f64, n: usize) -> Vec<f64> {
    claw::grid_points(half_width, n)
}

#[pyfunction]
#[pyo3(signature = (xs, mass, width, center = 0.0))]
fn gaussian_bump(xs: Vec<f64>, mass: f64, width: f64, center: f64) -> Vec<f64> {
    claw::gaussian_bump(&xs, mass, center, width)
}

#[pyfunction]
#[pyo3(signature = (mass, t, x, variant = "hopf_cole"))]
fn burgers_source(mass: f64, t: f64, x: f64, variant: &str) -> PyResult<f64> {
    let v = match variant {
        "hopf_cole" => SourceVariant::HopfCole,
        "printed" => SourceVariant::Printed,
        _ => {
            return Err(PyValueError::new_err(format!(
                "unknown source variant `{variant}`"
            )))
        }
    };
    claw::burgers_source(mass, t, x, v).py_err()
}

/// Runs the pseudospectral solver for u_t + Au + (g(u))_x = 0.
///
/// `nonlinearity` is "zero", "power" (g = c|u|^{r−1}u) or "burgers" (g = c u²).
/// Returns a dict with times, snapshots, mass drift, warnings and, when
/// `gap_norms` is given, the scaled gap to the linear flow for each p.
#[pyfunction]
#[pyo3(signature = (components, u0, half_width, dt, t_end, nonlinearity = "zero", r = 2.0, c = 1.0,
                    output_times = None, tail_budget = 1e-8, dealias = true, gap_norms = None))]
#[allow(clippy::too_many_arguments)]
fn solve<'py>(
    py: Python<'py>,
    components: Vec<PyComponent>,
    u0: Vec<f64>,
    half_width: f64,
    dt: f64,
    t_end: f64,
    nonlinearity: &str,
    r: f64,
    c: f64,
    output_times: Option<Vec<f64>>,
    tail_budget: f64,
    dealias: bool,
    gap_norms: Option<Vec<f64>>,
) -> PyResult<Bound<'py, PyDict>> {
    let g = match nonlinearity {
        "zero" => Nonlinearity::Zero,
        "power" => Nonlinearity::Power { r, c },
        "burgers" => Nonlinearity::Burgers { c },
        _ => {
            return Err(PyValueError::new_err(format!(
                "unknown nonlinearity `{nonlinearity}`"
            )))
        }
    };
    let mut cfg = SolverConfig::new(half_width, u0.len(), dt, t_end, spec_of(&components)?, g);
    if let Some(ts) = output_times {
        cfg.output_times = ts;
    }
    cfg.tail_budget = tail_budget;
    cfg.dealias = dealias;
    let tr = py.detach(|| claw::solve(&u0, &cfg)).py_err()?;
    let d = PyDict::new(py);
    d.set_item("times", tr.times.clone())?;
    d.set_item("mass_drift", tr.mass_drift())?;
    d.set_item("warnings", tr.warnings.clone())?;
    d.set_item(
        "linf",
        tr.diagnostics.iter().map(|x| x.linf).collect::<Vec<_>>(),
    )?;
    if let Some(ps) = gap_norms {
        let gaps = PyDict::new(py);
        for p in ps {
            let rep = claw::asymptotics_report(&tr, &cfg, p).py_err()?;
            gaps.set_item(p, rep.into_iter().map(|(_, g)| g).collect::<Vec<_>>())?;
        }
        d.set_item("scaled_gap", gaps)?;
    }
    d.set_item("snapshots", tr.snapshots)?;
    Ok(d)
}

#[pymodule]
fn pymslevy(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("BlowUpError", m.py().get_type::<BlowUpError>())?;
    m.add_class::<PyComponent>()?;
    m.add_function(wrap_pyfunction!(density_closed, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_density, m)?)?;
    m.add_function(wrap_pyfunction!(two_sided_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(one_sided_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(moment, m)?)?;
    m.add_function(wrap_pyfunction!(ln_stieltjes_moment, m)?)?;
    m.add_function(wrap_pyfunction!(carleman, m)?)?;
    m.add_function(wrap_pyfunction!(grid_points, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_bump, m)?)?;
    m.add_function(wrap_pyfunction!(burgers_source, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    Ok(())
}
