//! Python bindings for the pigrad engine.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use pigrad::catalog;
use pigrad::cli::{algebra_from_spec, parse_composition};
use pigrad::codim as engine;
use pigrad::freepoly::parse;
use pigrad::galgebra::GradedAlgebra;
use pigrad::idealkit;
use pigrad::io::{algebra_to_json, parse_algebra, parse_generators};
use pigrad::repn::cocharacter_multiplicities;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_python<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A finite-dimensional group-graded algebra.
#[pyclass(frozen)]
struct Algebra {
    inner: GradedAlgebra,
}

#[pymethods]
impl Algebra {
    /// Compact spec such as "K7:g,h+G2:g,h" over a cyclic product like "2x2".
    #[staticmethod]
    #[pyo3(signature = (spec, group = "2x2"))]
    fn named(spec: &str, group: &str) -> PyResult<Self> {
        Ok(Algebra { inner: algebra_from_spec(spec, group).map_err(value_error)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Algebra { inner: parse_algebra(text).map_err(value_error)? })
    }

    #[staticmethod]
    fn from_catalog(name: &str) -> PyResult<Self> {
        let e = catalog::find(name).ok_or_else(|| value_error(format!("no catalog algebra `{name}`")))?;
        Ok(Algebra { inner: e.algebra })
    }

    fn to_json(&self) -> String {
        algebra_to_json(&self.inner)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn group_order(&self) -> usize {
        self.inner.group().order()
    }

    fn direct_sum(&self, other: &Algebra) -> PyResult<Algebra> {
        Ok(Algebra { inner: self.inner.direct_sum(&other.inner).map_err(value_error)? })
    }

    fn __repr__(&self) -> String {
        self.inner.describe()
    }
}

#[pyfunction]
fn catalog_names() -> Vec<String> {
    catalog::catalog().into_iter().map(|e| e.name).collect()
}

#[pyfunction]
fn codim(py: Python<'_>, a: &Algebra, n: usize) -> usize {
    py.detach(|| engine::codim(&a.inner, n))
}

#[pyfunction]
fn proper_codim(py: Python<'_>, a: &Algebra, n: usize) -> usize {
    py.detach(|| engine::proper_codim(&a.inner, n))
}

/// Per-aggregate ranks and weights as a dict.
#[pyfunction]
fn codim_report(py: Python<'_>, a: &Algebra, n: usize) -> PyResult<Py<PyAny>> {
    let r = py.detach(|| engine::codim_report(&a.inner, n));
    to_python(py, &r)
}

#[pyfunction]
fn growth(py: Python<'_>, a: &Algebra, t: usize, n_max: usize) -> PyResult<Py<PyAny>> {
    let r = py.detach(|| engine::growth_report(&a.inner, t, n_max)).map_err(value_error)?;
    to_python(py, &r)
}

/// Multiplicities for slot degrees written like "1,0;0,1", as (multipartition, multiplicity) pairs.
#[pyfunction]
fn cocharacter(py: Python<'_>, a: &Algebra, composition: &str) -> PyResult<Vec<(String, usize)>> {
    let comp = parse_composition(composition, a.inner.group()).map_err(value_error)?;
    let d = py.detach(|| cocharacter_multiplicities(&a.inner, &comp)).map_err(value_error)?;
    Ok(d.terms.into_iter().map(|t| (t.multipartition.to_string(), t.multiplicity)).collect())
}

/// Returns None for an identity, else a nonvanishing evaluation.
#[pyfunction]
fn check_identity(a: &Algebra, composition: &str, expr: &str) -> PyResult<Option<String>> {
    let comp = parse_composition(composition, a.inner.group()).map_err(value_error)?;
    let p = parse(expr, &comp).map_err(value_error)?;
    Ok(idealkit::check_identity(&a.inner, &p).map_err(value_error)?.witness)
}

/// Certifies a generator set (JSON text, or the catalog basis when omitted).
#[pyfunction]
#[pyo3(signature = (a, generators = None, max_degree = 4))]
fn verify_basis(py: Python<'_>, a: &Algebra, generators: Option<&str>, max_degree: usize) -> PyResult<Py<PyAny>> {
    let set = match generators {
        Some(text) => parse_generators(text, a.inner.group()).map_err(value_error)?,
        None => catalog::lookup(&a.inner).ok_or_else(|| value_error("algebra is not in the catalog"))?.basis,
    };
    let r = py.detach(|| idealkit::verify_basis(&a.inner, &set, max_degree)).map_err(value_error)?;
    to_python(py, &r)
}

#[pyfunction]
#[pyo3(signature = (a, b, max_degree = 4))]
fn equivalent(py: Python<'_>, a: &Algebra, b: &Algebra, max_degree: usize) -> PyResult<Py<PyAny>> {
    let r = py.detach(|| idealkit::tg_equivalent_upto(&a.inner, &b.inner, max_degree)).map_err(value_error)?;
    to_python(py, &r)
}

#[pymodule]
fn _pigrad(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Algebra>()?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(codim, m)?)?;
    m.add_function(wrap_pyfunction!(proper_codim, m)?)?;
    m.add_function(wrap_pyfunction!(codim_report, m)?)?;
    m.add_function(wrap_pyfunction!(growth, m)?)?;
    m.add_function(wrap_pyfunction!(cocharacter, m)?)?;
    m.add_function(wrap_pyfunction!(check_identity, m)?)?;
    m.add_function(wrap_pyfunction!(verify_basis, m)?)?;
    m.add_function(wrap_pyfunction!(equivalent, m)?)?;
    Ok(())
}
