//! Python bindings: `import pyqhg`.

use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qhyper::barnes::{build_barnes_contour, capital_phi_orbit, check_conditions_b, watson_integral, DEFAULT_CLEARANCE};
use qhyper::doublesine::{log_s2, OmegaPair};
use qhyper::euler::{self, check_conditions_e, euler_jackson_phi};
use qhyper::numerics::{QuadratureConfig, SectorSpec};
use qhyper::qdiff::{lplus_from_samples, lq_from_samples};
use qhyper::qgamma;
use qhyper::qseries::{self, HGParams, SeriesConfig};
use qhyper::verify::{run_suite, Suite, VerifyConfig};

fn to_py(err: qhyper::Error) -> PyErr {
    if err.is_input_error() {
        PyValueError::new_err(err.to_string())
    } else {
        PyArithmeticError::new_err(err.to_string())
    }
}

/// The base `q`: `QModulus.unit(omega)` for `q = e^{2 pi i omega}`,
/// `QModulus.classical(tau)` or `QModulus.real(q)` for `0 < q < 1`.
#[pyclass(name = "QModulus", frozen, from_py_object)]
#[derive(Clone)]
struct PyQModulus(qgamma::QModulus);

#[pymethods]
impl PyQModulus {
    #[staticmethod]
    #[pyo3(signature = (omega, checked = true))]
    fn unit(omega: f64, checked: bool) -> PyResult<Self> {
        let q = if checked { qgamma::QModulus::unit(omega) } else { qgamma::QModulus::unit_unchecked(omega) };
        q.map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn classical(tau: f64) -> PyResult<Self> {
        qgamma::QModulus::classical(tau).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn real(q: f64) -> PyResult<Self> {
        qgamma::QModulus::from_real_q(q).map(Self).map_err(to_py)
    }

    #[getter]
    fn q(&self) -> Complex64 {
        self.0.q()
    }

    #[getter]
    fn omega(&self) -> Option<f64> {
        self.0.omega()
    }

    #[getter]
    fn tau(&self) -> Option<f64> {
        self.0.tau()
    }

    fn __repr__(&self) -> String {
        match (self.0.omega(), self.0.tau()) {
            (Some(w), _) => format!("QModulus.unit({w})"),
            (_, Some(t)) => format!("QModulus.classical({t})"),
            _ => "QModulus(?)".into(),
        }
    }
}

/// Hypergeometric parameters `(a, b, c)`.
#[pyclass(name = "Params", frozen, from_py_object)]
#[derive(Clone)]
struct PyParams(HGParams);

#[pymethods]
impl PyParams {
    #[new]
    fn new(a: Complex64, b: Complex64, c: Complex64) -> Self {
        Self(HGParams::new(a, b, c))
    }

    #[getter]
    fn a(&self) -> Complex64 {
        self.0.a
    }

    #[getter]
    fn b(&self) -> Complex64 {
        self.0.b
    }

    #[getter]
    fn c(&self) -> Complex64 {
        self.0.c
    }

    fn __repr__(&self) -> String {
        format!("Params({}, {}, {})", self.0.a, self.0.b, self.0.c)
    }
}

/// A value with its estimated absolute error.
#[pyclass(name = "Evaluation", frozen, get_all)]
struct PyEvaluation {
    value: Complex64,
    error_estimate: f64,
    warnings: Vec<String>,
    residual: Option<f64>,
}

#[pymethods]
impl PyEvaluation {
    fn __repr__(&self) -> String {
        format!("Evaluation(value={}, error_estimate={:.2e})", self.value, self.error_estimate)
    }
}

/// Double sine `S2(z | omega1, omega2)`; raises on its zeros and poles.
#[pyfunction]
#[pyo3(signature = (z, omega2, omega1 = 1.0))]
fn s2(z: Complex64, omega2: f64, omega1: f64) -> PyResult<Complex64> {
    let w = OmegaPair::new(omega1, omega2).map_err(to_py)?;
    let v = log_s2(z, &w).map_err(to_py)?;
    if !v.is_regular() {
        return Err(PyValueError::new_err(format!("S2 is singular at {z}: {:?}", v.status)));
    }
    Ok(v.value)
}

/// The q-gamma `Gamma~(z; q)`.
#[pyfunction]
fn gamma_tilde(z: Complex64, q: &PyQModulus) -> PyResult<Complex64> {
    let v = qgamma::gamma_tilde(z, &q.0).map_err(to_py)?;
    if !v.is_regular() {
        return Err(PyValueError::new_err(format!("Gamma~ is singular at {z}: {:?}", v.status)));
    }
    Ok(v.value)
}

/// `[z] = (1 - q^z) / (1 - q)`.
#[pyfunction]
fn q_bracket(z: Complex64, q: &PyQModulus) -> PyResult<Complex64> {
    qgamma::q_bracket(z, &q.0).map_err(to_py)
}

/// Gauss's `F(a, b, c; z)` for `|z| < 1`.
#[pyfunction]
fn hypergeometric_f(p: &PyParams, z: Complex64) -> PyResult<Complex64> {
    Ok(qseries::hypergeometric_f(&p.0, z, &SeriesConfig::default()).map_err(to_py)?.value)
}

/// The basic series `phi(q^a, q^b, q^c; q, z)` for `0 < q < 1`.
#[pyfunction]
fn basic_phi(p: &PyParams, q: &PyQModulus, z: Complex64) -> PyResult<Complex64> {
    Ok(qseries::basic_phi(&p.0, &q.0, z, &SeriesConfig::default()).map_err(to_py)?.value)
}

/// Barnes-type integral `Phi(z)` for `|q| = 1`, with its `L_q` residual.
#[pyfunction]
fn capital_phi(py: Python<'_>, p: &PyParams, q: &PyQModulus, z: Complex64) -> PyResult<PyEvaluation> {
    let (p, q) = (p.0, q.0);
    py.detach(|| {
        let prob = check_conditions_b(&p, &q, None)?;
        let contour = build_barnes_contour(&prob, 2.0, DEFAULT_CLEARANCE, None)?;
        let (orbit, err) = capital_phi_orbit(&prob, z, &contour, &QuadratureConfig::default())?;
        let r = lq_from_samples(&orbit, &prob.params, z, &prob.q)?;
        Ok(PyEvaluation { value: orbit[0], error_estimate: err, warnings: Vec::new(), residual: Some(r.normalized) })
    })
    .map_err(to_py)
}

/// Euler-type integral `Psi(x)` for `|q| = 1`; with `residual=True` also the `L_+` residual.
#[pyfunction]
#[pyo3(signature = (p, q, x, residual = false))]
fn capital_psi(py: Python<'_>, p: &PyParams, q: &PyQModulus, x: Complex64, residual: bool) -> PyResult<PyEvaluation> {
    let (p, q) = (p.0, q.0);
    py.detach(|| {
        let prob = check_conditions_e(&p, &q)?;
        let cfg = QuadratureConfig::default();
        let v = euler::capital_psi(&prob, x, &cfg)?;
        let res = if residual {
            let s1 = euler::capital_psi(&prob, x + 1.0, &cfg)?.value;
            let s2 = euler::capital_psi(&prob, x + 2.0, &cfg)?.value;
            Some(lplus_from_samples(&[v.value, s1, s2], &prob.params, x, &prob.q)?.normalized)
        } else {
            None
        };
        Ok(PyEvaluation { value: v.value, error_estimate: v.error_estimate, warnings: v.warnings, residual: res })
    })
    .map_err(to_py)
}

/// Watson's integral for the basic series, `0 < q < 1`.
#[pyfunction]
#[pyo3(signature = (p, q, z, delta = 0.3))]
fn watson(py: Python<'_>, p: &PyParams, q: &PyQModulus, z: Complex64, delta: f64) -> PyResult<PyEvaluation> {
    let (p, q) = (p.0, q.0);
    py.detach(|| {
        let sector = SectorSpec::symmetric(delta)?;
        let v = watson_integral(&p, &q, z, &sector, &QuadratureConfig::default())?;
        Ok(PyEvaluation { value: v.value, error_estimate: v.error_estimate, warnings: v.warnings, residual: None })
    })
    .map_err(to_py)
}

/// Euler's Jackson-integral representation of the basic series, `0 < q < 1`.
#[pyfunction]
fn euler_jackson(p: &PyParams, q: &PyQModulus, z: Complex64) -> PyResult<Complex64> {
    Ok(euler_jackson_phi(&p.0, &q.0, z, 1e-17).map_err(to_py)?.value)
}

/// Runs a verification suite and returns one dict per check.
#[pyfunction]
#[pyo3(signature = (suite = "all", seed = 42, tolerance_factor = 1.0))]
fn verify<'py>(py: Python<'py>, suite: &str, seed: u64, tolerance_factor: f64) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let suite: Suite = suite.parse().map_err(to_py)?;
    let records = py.detach(|| run_suite(suite, &VerifyConfig { seed, tolerance_factor }));
    records
        .into_iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("check_id", r.check_id)?;
            d.set_item("anchor", r.anchor)?;
            d.set_item("max_deviation", r.max_deviation)?;
            d.set_item("tolerance", r.tolerance)?;
            d.set_item("pass", r.pass)?;
            d.set_item("runtime_secs", r.runtime_secs)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn pyqhg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", qhyper::VERSION)?;
    m.add_class::<PyQModulus>()?;
    m.add_class::<PyParams>()?;
    m.add_class::<PyEvaluation>()?;
    m.add_function(wrap_pyfunction!(s2, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_tilde, m)?)?;
    m.add_function(wrap_pyfunction!(q_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(hypergeometric_f, m)?)?;
    m.add_function(wrap_pyfunction!(basic_phi, m)?)?;
    m.add_function(wrap_pyfunction!(capital_phi, m)?)?;
    m.add_function(wrap_pyfunction!(capital_psi, m)?)?;
    m.add_function(wrap_pyfunction!(watson, m)?)?;
    m.add_function(wrap_pyfunction!(euler_jackson, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
