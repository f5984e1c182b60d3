//! Python bindings for `trigpos`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use trigpos::bounds::{self, BoundReport as CoreBound, Region};
use trigpos::engine::{self, GridCertificate as CoreGrid};
use trigpos::exact::{self, Enclosure, Polynomial, Rational};
use trigpos::mustar::{self, MuStarResult};
use trigpos::trig::{self, TrigKind};
use trigpos::{gegenbauer, quad, verify};

fn err(e: trigpos::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_rational(s: &str) -> PyResult<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = exact::parse_decimal(p).map_err(err)?;
        let q = exact::parse_decimal(q).map_err(err)?;
        if q == exact::int(0) {
            return Err(PyValueError::new_err("zero denominator"));
        }
        Ok(p / q)
    } else {
        exact::parse_decimal(s).map_err(err)
    }
}

fn enclosure(lo: f64, hi: Option<f64>) -> PyResult<Enclosure> {
    let lo_r = exact::rat_from_f64(lo).map_err(err)?;
    match hi {
        None => Ok(Enclosure::point(lo_r)),
        Some(h) => Enclosure::new(lo_r, exact::rat_from_f64(h).map_err(err)?).map_err(err),
    }
}

#[pyclass(name = "MuStar", frozen)]
struct PyMuStar {
    inner: MuStarResult,
}

#[pymethods]
impl PyMuStar {
    #[getter]
    fn rho(&self) -> f64 {
        self.inner.rho
    }
    #[getter]
    fn lo(&self) -> f64 {
        self.inner.lo()
    }
    #[getter]
    fn hi(&self) -> f64 {
        self.inner.hi()
    }
    #[getter]
    fn mid(&self) -> f64 {
        self.inner.mid()
    }
    #[getter]
    fn width(&self) -> f64 {
        self.inner.width()
    }
    fn contains(&self, x: f64) -> bool {
        self.inner.enclosure.contains_f64(x)
    }
    fn __repr__(&self) -> String {
        format!("MuStar(rho={}, [{:.17}, {:.17}])", self.inner.rho, self.lo(), self.hi())
    }
}

/// Encloses `mu*(rho)`.
#[pyfunction]
#[pyo3(signature = (rho, width = 1e-13))]
fn mu_star(rho: f64, width: f64) -> PyResult<PyMuStar> {
    mustar::mu_star(rho, width).map(|inner| PyMuStar { inner }).map_err(err)
}

#[pyclass(name = "GridCertificate", frozen, get_all)]
struct PyGrid {
    label: String,
    interval: (f64, f64),
    step: f64,
    lipschitz: f64,
    min_sampled: f64,
    margin: f64,
    status: String,
    witness: Option<f64>,
    cells: usize,
    near_zero: Option<f64>,
}

impl From<CoreGrid> for PyGrid {
    fn from(c: CoreGrid) -> Self {
        let status = format!("{:?}", c.status).to_lowercase();
        Self {
            label: c.label,
            interval: c.interval,
            step: c.step,
            lipschitz: c.lipschitz,
            min_sampled: c.min_sampled,
            margin: c.margin,
            status,
            witness: c.witness,
            cells: c.cells,
            near_zero: c.near_zero,
        }
    }
}

#[pymethods]
impl PyGrid {
    #[getter]
    fn certified(&self) -> bool {
        self.status == "certified"
    }
    fn __repr__(&self) -> String {
        format!("GridCertificate({}, {}, margin={:e})", self.label, self.status, self.margin)
    }
}

#[pyclass(name = "TrigSum", frozen)]
struct PyTrigSum {
    inner: trig::TrigSum,
}

#[pymethods]
impl PyTrigSum {
    /// `U_n(phi) = sum d_k cos((2k + 1/3) phi - pi/6)`.
    #[staticmethod]
    #[pyo3(signature = (n, mu_lo, mu_hi = None))]
    fn u_n(n: usize, mu_lo: f64, mu_hi: Option<f64>) -> PyResult<Self> {
        Ok(Self { inner: trig::build_u_n(n, &enclosure(mu_lo, mu_hi)?) })
    }

    /// `varsigma_n(rho, mu, theta) = sum d_k sin((2k + rho) theta)`; `rho` as "p/q" or a decimal.
    #[staticmethod]
    #[pyo3(signature = (n, rho, mu_lo, mu_hi = None))]
    fn varsigma(n: usize, rho: &str, mu_lo: f64, mu_hi: Option<f64>) -> PyResult<Self> {
        Ok(Self { inner: trig::build_varsigma(n, &parse_rational(rho)?, &enclosure(mu_lo, mu_hi)?) })
    }

    #[staticmethod]
    fn omega(n: usize) -> Self {
        Self { inner: trig::build_omega(n) }
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn value(&self, theta: f64) -> f64 {
        self.inner.value(theta)
    }

    /// `(value, error bound)` at `theta`.
    fn eval(&self, theta: f64) -> (f64, f64) {
        let e = self.inner.eval(theta);
        (e.value, e.err)
    }

    fn lipschitz(&self) -> f64 {
        self.inner.lipschitz()
    }

    #[pyo3(signature = (a, b, slack = 0.0))]
    fn certify(&self, a: f64, b: f64, slack: f64) -> PyResult<PyGrid> {
        engine::certify_positive_trig(&self.inner, a, b, slack).map(PyGrid::from).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("TrigSum({}, {} terms)", self.inner.label(), self.inner.len())
    }
}

#[pyclass(name = "BoundReport", frozen, get_all)]
struct PyBound {
    label: String,
    rho: f64,
    mu: f64,
    value: f64,
    err: f64,
    positive: bool,
    components: Vec<(String, f64, f64, f64)>,
    alternate: Option<f64>,
}

impl From<CoreBound> for PyBound {
    fn from(b: CoreBound) -> Self {
        let components = b.components.iter().zip(&b.signs).map(|(c, s)| (c.name.clone(), *s, c.value, c.err)).collect();
        Self {
            label: b.label,
            rho: b.rho,
            mu: b.mu,
            value: b.value,
            err: b.err,
            positive: b.positive,
            components,
            alternate: b.alternate,
        }
    }
}

#[pymethods]
impl PyBound {
    fn __repr__(&self) -> String {
        format!("BoundReport({}, {:.10} ± {:.1e})", self.label, self.value, self.err)
    }
}

/// `L^(region)(rho)` for region in {"1", "2", "31", "32", "33"}.
#[pyfunction]
fn l_region(region: &str, rho: f64) -> PyResult<PyBound> {
    let r = Region::parse(region).map_err(err)?;
    bounds::l_region(r, rho).map(PyBound::from).map_err(err)
}

#[pyfunction]
fn master_bound() -> PyResult<PyBound> {
    bounds::two_thirds_master_bound().map(PyBound::from).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (mu, tol = quad::DEFAULT_TOL))]
fn chi_reference_integral(mu: f64, tol: f64) -> PyResult<(f64, f64)> {
    quad::chi_reference_integral(mu, tol).map(|r| (r.value, r.err)).map_err(err)
}

/// `int_0^x g(t + eta) t^(mu - 1) dt` with `g` = "sin" or "cos"; returns `(value, err)`.
#[pyfunction]
#[pyo3(signature = (kind, eta, mu, x, tol = quad::DEFAULT_TOL))]
fn fractional_osc_integral(kind: &str, eta: f64, mu: f64, x: f64, tol: f64) -> PyResult<(f64, f64)> {
    let kind = match kind {
        "sin" => TrigKind::Sin,
        "cos" => TrigKind::Cos,
        _ => return Err(PyValueError::new_err("kind must be 'sin' or 'cos'")),
    };
    quad::fractional_osc_integral(kind, eta, mu, x, tol).map(|r| (r.value, r.err)).map_err(err)
}

#[pyfunction]
fn partial_sum(mu: f64, z: Complex64, n: usize) -> Complex64 {
    engine::partial_sum(mu, z, n)
}

#[pyfunction]
fn closed_form_full_sum(mu: f64, phi: f64) -> PyResult<Complex64> {
    engine::closed_form_full_sum(mu, phi).map_err(err)
}

#[pyfunction]
fn gegenbauer_c(k: usize, lam: f64, x: f64) -> f64 {
    gegenbauer::gegenbauer_c(k, lam, x)
}

fn polynomial(coeffs: Vec<String>) -> PyResult<Polynomial> {
    Ok(Polynomial::new(coeffs.iter().map(|c| parse_rational(c)).collect::<PyResult<_>>()?))
}

/// Distinct real roots in `(a, b]` of the polynomial with ascending coefficients.
#[pyfunction]
fn count_roots(coeffs: Vec<String>, a: &str, b: &str) -> PyResult<usize> {
    let chain = exact::sturm_chain(&polynomial(coeffs)?).map_err(err)?;
    chain.count_roots_in(&parse_rational(a)?, &parse_rational(b)?).map_err(err)
}

/// Sturm certificate of `p > 0` on `[a, b]` as a dict.
#[pyfunction]
fn certify_positive_poly<'py>(py: Python<'py>, coeffs: Vec<String>, a: &str, b: &str) -> PyResult<Bound<'py, PyAny>> {
    let c = exact::certify_positive_poly(
        "p",
        &polynomial(coeffs)?,
        &parse_rational(a)?,
        &parse_rational(b)?,
        exact::Method::Sturm,
    )
    .map_err(err)?;
    json_to_py(py, &serde_json::to_string(&c).map_err(|e| PyValueError::new_err(e.to_string()))?)
}

fn json_to_py<'py>(py: Python<'py>, s: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (s,))
}

#[pyfunction]
fn cases() -> Vec<&'static str> {
    verify::CASES.to_vec()
}

/// Runs a verification case and returns its report as a dict. Keyword
/// arguments override settings (`nmax=20`, `theta_min=0.01`, ...).
#[pyfunction]
#[pyo3(signature = (case, **settings))]
fn run_case<'py>(py: Python<'py>, case: &str, settings: Option<&Bound<'py, PyDict>>) -> PyResult<Bound<'py, PyAny>> {
    let s = match settings {
        None => verify::Settings::default(),
        Some(d) => {
            let kebab = PyDict::new(py);
            for (k, v) in d.iter() {
                kebab.set_item(k.extract::<String>()?.replace('_', "-"), v)?;
            }
            let text: String = py.import("json")?.call_method1("dumps", (kebab,))?.extract()?;
            serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))?
        }
    };
    let report = py.detach(|| verify::run(case, &s)).map_err(err)?;
    json_to_py(py, &serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))?)
}

#[pymodule(name = "trigpos")]
fn trigpos_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMuStar>()?;
    m.add_class::<PyTrigSum>()?;
    m.add_class::<PyGrid>()?;
    m.add_class::<PyBound>()?;
    m.add_function(wrap_pyfunction!(mu_star, m)?)?;
    m.add_function(wrap_pyfunction!(l_region, m)?)?;
    m.add_function(wrap_pyfunction!(master_bound, m)?)?;
    m.add_function(wrap_pyfunction!(chi_reference_integral, m)?)?;
    m.add_function(wrap_pyfunction!(fractional_osc_integral, m)?)?;
    m.add_function(wrap_pyfunction!(partial_sum, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_full_sum, m)?)?;
    m.add_function(wrap_pyfunction!(gegenbauer_c, m)?)?;
    m.add_function(wrap_pyfunction!(count_roots, m)?)?;
    m.add_function(wrap_pyfunction!(certify_positive_poly, m)?)?;
    m.add_function(wrap_pyfunction!(cases, m)?)?;
    m.add_function(wrap_pyfunction!(run_case, m)?)?;
    Ok(())
}
