//! Python bindings. Rationals cross the boundary as `"num/den"` strings and
//! matrices as lists of rows of such strings.

use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qhankel::format::{mat_from_json, mat_json};
use qhankel::validate::{
    hilbert_limit as hilbert, moment_check as moment, orthogonality_residual as orth,
};
use qhankel::verify::verify_point;
use qhankel::{
    bareiss_det as bareiss, build as build_mat, closed_det, closed_inverse, exact, family_poly,
    gauss_inverse as gauss, identity_residual as identity, inverse_via_kernel, invertible_params,
    parse_rat, Error, InverseVariant, Mat, Rat, TruncationSpec,
};

type Rows = Vec<Vec<String>>;

fn py_err(e: Error) -> PyErr {
    if e.is_arithmetic_pole() {
        PyZeroDivisionError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn parse(s: &str) -> PyResult<Rat> {
    parse_rat(s).map_err(py_err)
}

fn to_rows(m: &Mat) -> Rows {
    m.rows()
        .map(|r| r.iter().map(Rat::to_string).collect())
        .collect()
}

fn from_rows(rows: Rows) -> PyResult<Mat> {
    let v = serde_json::json!({ "rows": rows });
    mat_from_json(&v).map_err(py_err)
}

/// One of the three matrix families with exact rational parameters.
#[pyclass(name = "Family", module = "pyqhankel", frozen, eq, hash)]
#[derive(PartialEq, Eq, Hash)]
struct PyFamily {
    inner: qhankel::Family,
}

#[pymethods]
impl PyFamily {
    #[staticmethod]
    fn jacobi(a: &str, b: &str, q: &str) -> PyResult<Self> {
        let inner = qhankel::Family::jacobi(parse(a)?, parse(b)?, parse(q)?).map_err(py_err)?;
        Ok(PyFamily { inner })
    }

    /// `t = q^(alpha + 1)`.
    #[staticmethod]
    fn laguerre(t: &str, q: &str) -> PyResult<Self> {
        let inner = qhankel::Family::laguerre(parse(t)?, parse(q)?).map_err(py_err)?;
        Ok(PyFamily { inner })
    }

    #[staticmethod]
    fn hermite2(q: &str) -> PyResult<Self> {
        let inner = qhankel::Family::hermite2(parse(q)?).map_err(py_err)?;
        Ok(PyFamily { inner })
    }

    #[getter]
    fn tag(&self) -> &'static str {
        self.inner.tag()
    }

    #[getter]
    fn params<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (k, v) in self.inner.params() {
            d.set_item(k, v)?;
        }
        Ok(d)
    }

    fn invertible(&self, n: usize) -> bool {
        invertible_params(&self.inner, n)
    }

    fn __repr__(&self) -> String {
        format!("Family.{}", self.inner)
    }
}

/// Hankel matrix of size `n + 1`.
#[pyfunction]
fn build(family: &PyFamily, n: usize) -> PyResult<Rows> {
    build_mat(&family.inner, n)
        .map(|m| to_rows(&m))
        .map_err(py_err)
}

/// Closed-form determinant.
#[pyfunction]
fn det(family: &PyFamily, n: usize) -> PyResult<String> {
    closed_det(&family.inner, n)
        .map(|d| d.to_string())
        .map_err(py_err)
}

/// Closed-form inverse; `as_printed=True` reproduces the printed sign conventions.
#[pyfunction]
#[pyo3(signature = (family, n, as_printed = false))]
fn invert(family: &PyFamily, n: usize, as_printed: bool) -> PyResult<Rows> {
    let variant = InverseVariant {
        corrected: !as_printed,
    };
    closed_inverse(&family.inner, n, variant)
        .map(|m| to_rows(&m))
        .map_err(py_err)
}

/// Inverse assembled from the orthogonal polynomials and their norms.
#[pyfunction]
fn kernel_inverse(family: &PyFamily, n: usize) -> PyResult<Rows> {
    inverse_via_kernel(&family.inner, n)
        .map(|m| to_rows(&m))
        .map_err(py_err)
}

/// Fraction-free elimination determinant of an arbitrary square matrix.
#[pyfunction]
fn bareiss_det(rows: Rows) -> PyResult<String> {
    Ok(bareiss(&from_rows(rows)?).to_string())
}

/// Gauss-Jordan inverse of an arbitrary square matrix.
#[pyfunction]
fn gauss_inverse(rows: Rows) -> PyResult<Rows> {
    gauss(&from_rows(rows)?)
        .map(|m| to_rows(&m))
        .map_err(py_err)
}

/// `max |M · Minv − I|` as a rational string.
#[pyfunction]
fn identity_residual(m: Rows, minv: Rows) -> PyResult<String> {
    identity(&from_rows(m)?, &from_rows(minv)?)
        .map(|r| r.to_string())
        .map_err(py_err)
}

/// Coefficients (constant term first) of the degree-`n` family polynomial.
#[pyfunction]
fn poly(family: &PyFamily, n: usize) -> PyResult<Vec<String>> {
    family_poly(&family.inner, n)
        .map(|p| p.coeffs().iter().map(Rat::to_string).collect())
        .map_err(py_err)
}

#[pyfunction]
fn qpoch(a: &str, q: &str, n: i64) -> PyResult<String> {
    exact::qpoch(&parse(a)?, &parse(q)?, n)
        .map(|r| r.to_string())
        .map_err(py_err)
}

#[pyfunction]
fn qbinom(m: usize, j: usize, q: &str) -> PyResult<String> {
    exact::qbinom(m, j, &parse(q)?)
        .map(|r| r.to_string())
        .map_err(py_err)
}

/// All exact checks at one point, as a dict mirroring the CLI's verify report.
#[pyfunction]
fn verify<'py>(py: Python<'py>, family: &PyFamily, n: usize) -> PyResult<Bound<'py, PyDict>> {
    let rep = verify_point(&family.inner, n, false);
    let out = PyDict::new(py);
    out.set_item("family", rep.family)?;
    out.set_item("params", rep.params.into_iter().collect::<Vec<_>>())?;
    out.set_item("n", rep.n)?;
    let checks = rep
        .checks
        .into_iter()
        .map(|c| {
            let d = PyDict::new(py);
            d.set_item("name", c.name)?;
            d.set_item("pass", c.pass)?;
            d.set_item("lhs", c.lhs)?;
            d.set_item("rhs", c.rhs)?;
            d.set_item("expect", serde_json::to_value(c.expect).unwrap().as_str())?;
            Ok(d)
        })
        .collect::<PyResult<Vec<_>>>()?;
    out.set_item("checks", checks)?;
    Ok(out)
}

#[pyfunction]
#[pyo3(signature = (family, m, n, c = 1.0, k = 200, tol = 1e-9))]
fn orthogonality_residual(
    family: &PyFamily,
    m: usize,
    n: usize,
    c: f64,
    k: usize,
    tol: f64,
) -> PyResult<f64> {
    let spec = TruncationSpec::new(k, tol).map_err(py_err)?;
    orth(&family.inner, c, m, n, &spec).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (family, n, c = 1.0, k = 200, tol = 1e-8))]
fn moment_check(family: &PyFamily, n: usize, c: f64, k: usize, tol: f64) -> PyResult<f64> {
    let spec = TruncationSpec::new(k, tol).map_err(py_err)?;
    moment(&family.inner, c, n, &spec).map_err(py_err)
}

#[pyfunction]
fn hilbert_limit(n: usize, eps: f64) -> PyResult<f64> {
    hilbert(n, eps).map_err(py_err)
}

/// Matrix as the CLI's JSON object (`{"n": ..., "rows": ...}`), serialized.
#[pyfunction]
fn matrix_json(rows: Rows) -> PyResult<String> {
    Ok(mat_json(&from_rows(rows)?).to_string())
}

#[pymodule]
fn pyqhankel(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyFamily>()?;
    m.add_function(wrap_pyfunction!(build, m)?)?;
    m.add_function(wrap_pyfunction!(det, m)?)?;
    m.add_function(wrap_pyfunction!(invert, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(bareiss_det, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(identity_residual, m)?)?;
    m.add_function(wrap_pyfunction!(poly, m)?)?;
    m.add_function(wrap_pyfunction!(qpoch, m)?)?;
    m.add_function(wrap_pyfunction!(qbinom, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(orthogonality_residual, m)?)?;
    m.add_function(wrap_pyfunction!(moment_check, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_limit, m)?)?;
    m.add_function(wrap_pyfunction!(matrix_json, m)?)?;
    Ok(())
}
