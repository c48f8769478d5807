//! Python bindings. Rationals cross the boundary as strings (`"p/q"`);
//! inputs may be anything whose `str()` is an integer, `p/q` or a
//! terminating decimal (so `int`, `fractions.Fraction` and `str` all work).

use meixner::cumulants::{moments_to_cumulants, noncrossing_partitions, set_partitions};
use meixner::jacobi::{gauss_quadrature, moments as jacobi_moments, mu_jacobi, nu_jacobi};
use meixner::operators::{
    lowering_integral_apply, lowering_moment_formula, lowering_symbol_apply, raising_difference_apply_exact,
    raising_matrix,
};
use meixner::poly::{from_ops_coeffs, ops_from_jacobi, to_ops_coeffs};
use meixner::series;
use meixner::verify::{self, Suite, VerificationReport};
use meixner::{check::ErrorMeasure, Framework, JacobiCoeffs, MeixnerParams, Poly, Rational};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    meixner::parse_rational(&obj.str()?.to_string()).map_err(value_error)
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn parse_framework(name: &str) -> PyResult<Framework> {
    name.parse().map_err(value_error)
}

/// Parameters `(framework, lambda, eta, t)` of a centred Meixner family.
#[pyclass(name = "Params", frozen, from_py_object)]
#[derive(Clone)]
struct PyParams {
    inner: MeixnerParams,
}

#[pymethods]
impl PyParams {
    #[new]
    #[pyo3(signature = (framework, lam, eta, t = None))]
    fn new(framework: &str, lam: &Bound<'_, PyAny>, eta: &Bound<'_, PyAny>, t: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let t = match t {
            Some(t) => rational(t)?,
            None => Rational::from_integer(1.into()),
        };
        let inner = MeixnerParams::new(parse_framework(framework)?, rational(lam)?, rational(eta)?, t).map_err(value_error)?;
        Ok(Self { inner })
    }

    #[getter]
    fn framework(&self) -> &'static str {
        self.inner.framework().name()
    }

    #[getter]
    fn lam(&self) -> String {
        self.inner.lambda().to_string()
    }

    #[getter]
    fn eta(&self) -> String {
        self.inner.eta().to_string()
    }

    #[getter]
    fn t(&self) -> String {
        self.inner.t().to_string()
    }

    /// One of gaussian, poisson, gamma, pascal, meixner-second-kind.
    #[getter]
    fn case(&self) -> &'static str {
        self.inner.case().name()
    }

    fn __repr__(&self) -> String {
        format!("Params('{}', '{}', '{}', t='{}')", self.framework(), self.lam(), self.eta(), self.t())
    }
}

fn jacobi_of(p: &PyParams, measure: &str, len: usize) -> PyResult<JacobiCoeffs> {
    match measure {
        "mu" => Ok(mu_jacobi(&p.inner, len)),
        "nu" => Ok(nu_jacobi(&p.inner, len)),
        other => Err(value_error(format!("unknown measure '{other}' (expected mu or nu)"))),
    }
}

fn poly_from(coeffs: &[Bound<'_, PyAny>]) -> PyResult<Poly> {
    coeffs.iter().map(rational).collect::<PyResult<Vec<_>>>().map(Poly::new)
}

/// Jacobi coefficients `(b_k, a_k)` for `k = 0..=n`; `a_0` is `None`.
#[pyfunction]
#[pyo3(signature = (params, n, measure = "mu"))]
fn jacobi(params: &PyParams, n: usize, measure: &str) -> PyResult<Vec<(String, Option<String>)>> {
    let j = jacobi_of(params, measure, n + 1)?;
    (0..=n)
        .map(|k| {
            let a = if k == 0 { None } else { Some(j.a(k).map_err(value_error)?.to_string()) };
            Ok((j.b(k).map_err(value_error)?.to_string(), a))
        })
        .collect()
}

/// Moments `m(0), ..., m(n)`.
#[pyfunction]
#[pyo3(signature = (params, n, measure = "mu"))]
fn moments(params: &PyParams, n: usize, measure: &str) -> PyResult<Vec<String>> {
    let m = jacobi_moments(&jacobi_of(params, measure, n + 1)?, n).map_err(value_error)?;
    Ok(strings(m.as_slice()))
}

/// Cumulants `1..=n` of the measure, by the partition recursion.
#[pyfunction]
#[pyo3(signature = (params, n, measure = "mu"))]
fn cumulants(params: &PyParams, n: usize, measure: &str) -> PyResult<Vec<String>> {
    let m = jacobi_moments(&jacobi_of(params, measure, n + 1)?, n).map_err(value_error)?;
    let c = moments_to_cumulants(params.inner.framework(), &m, n).map_err(value_error)?;
    Ok((1..=n).map(|k| c.get(k).to_string()).collect())
}

/// Monomial coefficients (lowest degree first) of `P_0, ..., P_n`.
#[pyfunction]
fn polynomials(params: &PyParams, n: usize) -> PyResult<Vec<Vec<String>>> {
    let basis = ops_from_jacobi(&mu_jacobi(&params.inner, n), n).map_err(value_error)?;
    Ok(basis.family().iter().map(|p| strings(p.coeffs())).collect())
}

/// Coefficients `0..=order` of `psi`, `psi_inv`, `cumulant` or `gf` (at `x0`).
#[pyfunction]
#[pyo3(signature = (params, which, order, x0 = None))]
fn series_coefficients(params: &PyParams, which: &str, order: usize, x0: Option<&Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
    let p = &params.inner;
    let s = match which {
        "psi" => series::psi(p, order),
        "psi_inv" => series::psi_inv(p, order),
        "cumulant" => series::cumulant_series(p, order),
        "gf" => {
            let x0 = match x0 {
                Some(x) => rational(x)?,
                None => Rational::from_integer(0.into()),
            };
            series::generating_function(p, &x0, order)
        }
        other => return Err(value_error(format!("unknown series '{other}'"))),
    }
    .map_err(value_error)?;
    Ok(strings(s.coeffs()))
}

/// Applies the lowering operator by `integral` kernel, `symbol` series, or
/// (for a single monomial degree) the `moment` formula.
#[pyfunction]
#[pyo3(signature = (params, coeffs, method = "integral"))]
fn lower(params: &PyParams, coeffs: Vec<Bound<'_, PyAny>>, method: &str) -> PyResult<Vec<String>> {
    let f = poly_from(&coeffs)?;
    let out = match method {
        "integral" => lowering_integral_apply(&params.inner, &f),
        "symbol" => lowering_symbol_apply(&params.inner, &f),
        "moment" => {
            let n = f.degree().ok_or_else(|| value_error("moment formula needs a monomial"))?;
            if f != Poly::monomial(n) {
                return Err(value_error("moment formula needs a monomial"));
            }
            lowering_moment_formula(&params.inner, n)
        }
        other => return Err(value_error(format!("unknown method '{other}'"))),
    }
    .map_err(value_error)?;
    Ok(strings(out.coeffs()))
}

/// Applies the raising operator: difference operators (classical, exact) or
/// the basis shift (free).
#[pyfunction]
fn raise_poly(params: &PyParams, coeffs: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
    let f = poly_from(&coeffs)?;
    let out = match params.inner.framework() {
        Framework::Classical => raising_difference_apply_exact(&params.inner, &f),
        Framework::Free => {
            let deg = f.degree().unwrap_or(0);
            let unit = params.inner.with_t(Rational::from_integer(1.into())).map_err(value_error)?;
            ops_from_jacobi(&mu_jacobi(&unit, deg + 1), deg + 1).and_then(|basis| {
                let c = to_ops_coeffs(&f, &basis)?;
                let mut padded = c;
                padded.resize(deg + 1, Rational::from_integer(0.into()));
                from_ops_coeffs(&raising_matrix(deg).apply(&padded), &basis)
            })
        }
    }
    .map_err(value_error)?;
    Ok(strings(out.coeffs()))
}

/// Gauss rule with `m` nodes: `(nodes, weights)`.
#[pyfunction]
#[pyo3(signature = (params, m, measure = "mu"))]
fn quadrature(params: &PyParams, m: usize, measure: &str) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let rule = gauss_quadrature(&jacobi_of(params, measure, m.max(1))?, m).map_err(value_error)?;
    Ok((rule.nodes, rule.weights))
}

#[pyfunction]
fn set_partition_count(n: usize) -> PyResult<usize> {
    set_partitions(n).map(|v| v.len()).map_err(value_error)
}

#[pyfunction]
fn noncrossing_partition_count(n: usize) -> PyResult<usize> {
    noncrossing_partitions(n).map(|v| v.len()).map_err(value_error)
}

#[pyfunction]
fn classify(lam: &Bound<'_, PyAny>, eta: &Bound<'_, PyAny>) -> PyResult<&'static str> {
    meixner::classify(&rational(lam)?, &rational(eta)?).map(|c| c.name()).map_err(value_error)
}

fn report_dict<'py>(py: Python<'py>, r: &VerificationReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("schema", r.schema)?;
    d.set_item("suite", &r.suite)?;
    d.set_item("framework", r.framework.name())?;
    d.set_item("lambda", &r.lambda)?;
    d.set_item("eta", &r.eta)?;
    d.set_item("t", &r.t)?;
    d.set_item("order", r.order)?;
    d.set_item("status", r.status.to_string())?;
    match r.max_abs_error {
        ErrorMeasure::Exact => d.set_item("max_abs_error", "exact")?,
        ErrorMeasure::Value(v) => d.set_item("max_abs_error", v)?,
    }
    d.set_item("detail", r.detail.as_deref())?;
    d.set_item("elapsed_ms", r.elapsed_ms)?;
    Ok(d)
}

/// Runs verification suites on `params` (or the five-case grid) and returns
/// one report dict per (parameter set, suite).
#[pyfunction]
#[pyo3(signature = (params = None, suite = "all", order = meixner::DEFAULT_ORDER, tolerance = verify::DEFAULT_TOLERANCE))]
fn run_verification<'py>(
    py: Python<'py>,
    params: Option<&PyParams>,
    suite: &str,
    order: usize,
    tolerance: f64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let suites = Suite::parse_selection(suite).map_err(value_error)?;
    let points = match params {
        Some(p) => vec![p.inner.clone()],
        None => verify::default_grid(),
    };
    let reports = py.detach(|| verify::run_grid(&points, &suites, order, tolerance));
    reports.iter().map(|r| report_dict(py, r)).collect()
}

#[pymodule]
fn pymeixner(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParams>()?;
    m.add_function(wrap_pyfunction!(jacobi, m)?)?;
    m.add_function(wrap_pyfunction!(moments, m)?)?;
    m.add_function(wrap_pyfunction!(cumulants, m)?)?;
    m.add_function(wrap_pyfunction!(polynomials, m)?)?;
    m.add_function(wrap_pyfunction!(series_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(lower, m)?)?;
    m.add_function(wrap_pyfunction!(raise_poly, m)?)?;
    m.add_function(wrap_pyfunction!(quadrature, m)?)?;
    m.add_function(wrap_pyfunction!(set_partition_count, m)?)?;
    m.add_function(wrap_pyfunction!(noncrossing_partition_count, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(run_verification, m)?)?;
    Ok(())
}
