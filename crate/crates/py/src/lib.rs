//! Python bindings. Reports cross the boundary as dicts built from their JSON form.

use std::sync::Arc;

use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyIOError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use tracelab::brauer::{decompose_unit, subgroup_catalog};
use tracelab::chartable::CharacterTable;
use tracelab::config::{Format, RunConfig};
use tracelab::group::named::{resolve_group, resolve_subgroup};
use tracelab::report::{self, Render};
use tracelab::weyl::{self, Weight};
use tracelab::{Error, GroupTable};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Identity(_) | Error::Computation(_) => PyArithmeticError::new_err(e.to_string()),
        Error::Io(_) => PyIOError::new_err(e.to_string()),
        Error::Json(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_dict<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn config(seed: Option<u64>, trials: Option<usize>) -> PyResult<RunConfig> {
    let mut c = RunConfig::default();
    if let Some(s) = seed {
        c.seed = s;
    }
    if let Some(t) = trials {
        c.trials = t;
    }
    c.validate().map_err(py_err)?;
    Ok(c)
}

/// A finite group given by a built-in name, a group file or generators.
#[pyclass(name = "Group", module = "tracelab", frozen)]
struct PyGroup {
    inner: Arc<GroupTable>,
}

#[pymethods]
impl PyGroup {
    #[new]
    #[pyo3(signature = (spec, cap = 20160))]
    fn new(spec: &str, cap: usize) -> PyResult<Self> {
        Ok(PyGroup { inner: Arc::new(resolve_group(spec, cap).map_err(py_err)?) })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn name(&self) -> Option<String> {
        self.inner.name().map(str::to_string)
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn exponent(&self) -> u32 {
        self.inner.exponent()
    }

    fn class_sizes(&self) -> Vec<usize> {
        self.inner.classes().sizes().to_vec()
    }

    fn class_representatives(&self) -> Vec<String> {
        self.inner.classes().representatives().iter().map(|&r| self.inner.label(r)).collect()
    }

    fn multiply(&self, a: u32, b: u32) -> PyResult<u32> {
        let n = self.inner.order() as u32;
        if a >= n || b >= n {
            return Err(PyValueError::new_err(format!("elements are indices below {n}")));
        }
        Ok(self.inner.mul(a, b))
    }

    #[pyo3(signature = (seed = None))]
    fn character_table(&self, seed: Option<u64>) -> PyResult<PyCharacterTable> {
        let inner = match seed {
            Some(s) => CharacterTable::compute_with_seed(&self.inner, s),
            None => CharacterTable::compute(&self.inner),
        }
        .map_err(py_err)?;
        Ok(PyCharacterTable { inner })
    }

    fn __repr__(&self) -> String {
        format!("Group({:?}, order={})", self.inner.name().unwrap_or("?"), self.inner.order())
    }
}

/// Exact irreducible characters of a group.
#[pyclass(name = "CharacterTable", module = "tracelab", frozen)]
struct PyCharacterTable {
    inner: CharacterTable,
}

#[pymethods]
impl PyCharacterTable {
    #[getter]
    fn degrees(&self) -> Vec<u64> {
        self.inner.degrees().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Row values as complex numbers.
    fn row(&self, pi: usize) -> PyResult<Vec<Complex64>> {
        if pi >= self.inner.len() {
            return Err(py_err(Error::OutOfRange { index: pi, len: self.inner.len() }));
        }
        Ok(self.inner.row(pi).iter().map(|c| c.to_c64()).collect())
    }

    /// Row values as exact strings in powers of `z = exp(2πi/e)`.
    fn exact_row(&self, pi: usize) -> PyResult<Vec<String>> {
        if pi >= self.inner.len() {
            return Err(py_err(Error::OutOfRange { index: pi, len: self.inner.len() }));
        }
        let e = self.inner.group().exponent();
        Ok(self.inner.row(pi).iter().map(|c| c.to_string_in(e)).collect())
    }

    fn checks(&self) -> bool {
        self.inner.checks().all()
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &report::chartable_report(&self.inner))
    }

    /// `[Σ_H a_H i 1_H = 1_G]` as `(subgroup order, coefficient)` pairs.
    #[pyo3(signature = (cap = tracelab::brauer::DEFAULT_CATALOG_CAP))]
    fn unit_decomposition(&self, cap: usize) -> PyResult<Vec<(usize, i64)>> {
        let catalog = subgroup_catalog(self.inner.group(), cap).map_err(py_err)?;
        let d = decompose_unit(&catalog).map_err(py_err)?;
        Ok(d.coefficients.iter().map(|&(i, a)| (catalog.classes()[i].order(), a)).collect())
    }
}

fn table_for(spec: &str, seed: u64) -> PyResult<CharacterTable> {
    let c = RunConfig::default();
    let g = Arc::new(resolve_group(spec, c.caps.group_order).map_err(py_err)?);
    CharacterTable::compute_with_seed(&g, seed).map_err(py_err)
}

#[pyfunction]
fn chartable<'py>(py: Python<'py>, group: &str) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &report::chartable_report(&table_for(group, 0)?))
}

#[pyfunction]
fn induce<'py>(py: Python<'py>, group: &str, subgroup: &str, character: usize) -> PyResult<Bound<'py, PyAny>> {
    let t = table_for(group, 0)?;
    let h = resolve_subgroup(t.group(), subgroup).map_err(py_err)?;
    to_dict(py, &report::induce_report(&t, &h, character).map_err(py_err)?)
}

#[pyfunction]
fn brauer<'py>(py: Python<'py>, group: &str) -> PyResult<Bound<'py, PyAny>> {
    let c = RunConfig::default();
    to_dict(py, &report::brauer_report(&table_for(group, 0)?, c.caps.subgroup_catalog).map_err(py_err)?)
}

#[pyfunction]
#[pyo3(signature = (group, subgroup, seed = None, trials = None))]
fn trace<'py>(
    py: Python<'py>,
    group: &str,
    subgroup: &str,
    seed: Option<u64>,
    trials: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let c = config(seed, trials)?;
    let t = table_for(group, c.seed)?;
    let h = resolve_subgroup(t.group(), subgroup).map_err(py_err)?;
    to_dict(py, &report::trace_report(&t, &h, &c).map_err(py_err)?)
}

#[pyfunction]
#[pyo3(signature = (group, subgroup, seed = None, trials = None))]
fn poisson<'py>(
    py: Python<'py>,
    group: &str,
    subgroup: &str,
    seed: Option<u64>,
    trials: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let c = config(seed, trials)?;
    let t = table_for(group, c.seed)?;
    let h = resolve_subgroup(t.group(), subgroup).map_err(py_err)?;
    to_dict(py, &report::poisson_report(&t, &h, &c).map_err(py_err)?)
}

#[pyfunction]
#[pyo3(signature = (a, n = 20))]
fn theta<'py>(py: Python<'py>, a: f64, n: u32) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &report::theta_report(a, n).map_err(py_err)?)
}

#[pyfunction]
#[pyo3(name = "weyl", signature = (cartan_type, highest, grid = None))]
fn weyl_summary<'py>(
    py: Python<'py>,
    cartan_type: &str,
    highest: Vec<i64>,
    grid: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &report::weyl_report(cartan_type, &highest, grid, &RunConfig::default()).map_err(py_err)?)
}

#[pyfunction]
fn weyl_dimension(cartan_type: &str, highest: Vec<i64>) -> PyResult<u64> {
    let r = weyl::build_root_system(cartan_type).map_err(py_err)?;
    weyl::weyl_dimension(&r, &Weight::new(highest)).map_err(py_err)
}

/// `ch_λ(H)` with `H` in simple-coroot coordinates.
#[pyfunction]
fn weyl_character(cartan_type: &str, highest: Vec<i64>, h: Vec<f64>) -> PyResult<Complex64> {
    let r = weyl::build_root_system(cartan_type).map_err(py_err)?;
    let w = weyl::weyl_group(&r, weyl::DEFAULT_WEYL_CAP).map_err(py_err)?;
    weyl::weyl_character_value(&r, &w, &Weight::new(highest), &h).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (group, subgroup = None, seed = None, trials = None))]
fn verify_all<'py>(
    py: Python<'py>,
    group: &str,
    subgroup: Option<&str>,
    seed: Option<u64>,
    trials: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let c = config(seed, trials)?;
    let t = table_for(group, c.seed)?;
    let h = subgroup.map(|s| resolve_subgroup(t.group(), s)).transpose().map_err(py_err)?;
    to_dict(py, &report::verify_all(&t, h.as_ref(), &c).map_err(py_err)?)
}

/// The `report` subcommand's file contents.
#[pyfunction]
#[pyo3(signature = (group, format = "json"))]
fn render_report(group: &str, format: &str) -> PyResult<String> {
    let f: Format = format.parse().map_err(py_err)?;
    report::group_report(&table_for(group, 0)?).render(f).map_err(py_err)
}

#[pymodule]
#[pyo3(name = "tracelab")]
fn tracelab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyCharacterTable>()?;
    m.add_function(wrap_pyfunction!(chartable, m)?)?;
    m.add_function(wrap_pyfunction!(induce, m)?)?;
    m.add_function(wrap_pyfunction!(brauer, m)?)?;
    m.add_function(wrap_pyfunction!(trace, m)?)?;
    m.add_function(wrap_pyfunction!(poisson, m)?)?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_summary, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_character, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    m.add_function(wrap_pyfunction!(render_report, m)?)?;
    Ok(())
}
