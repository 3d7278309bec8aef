//! Python bindings: parse and check circuits, simulate them on density
//! matrices, compare them, and lower them to register programs.
//!
//! Matrices cross the boundary as lists of rows of Python `complex`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qwire::check::box_type;
use qwire::cli::corpus;
use qwire::denote::{denote_box, denote_unitary, max_deviation as choi_deviation};
use qwire::surface::{self, ElabError};
use qwire::{BoxedCircuit, CMatrix, Complex, Tolerance, UnitaryGate};

create_exception!(qwire, ParseError, PyValueError, "Malformed surface text.");
create_exception!(qwire, LinearityError, PyValueError, "A box violates the linear wire discipline.");

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_rows(m: &CMatrix) -> Vec<Vec<Complex>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)]).collect()).collect()
}

fn from_rows(rows: Vec<Vec<Complex>>) -> PyResult<CMatrix> {
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("rows have different lengths"));
    }
    CMatrix::from_vec(n, cols, rows.into_iter().flatten().collect()).ok_or_else(|| PyValueError::new_err("empty matrix"))
}

/// A checked, boxed circuit.
#[pyclass(frozen, skip_from_py_object, module = "qwire")]
#[derive(Clone)]
pub struct Circuit {
    inner: BoxedCircuit,
}

#[pymethods]
impl Circuit {
    #[getter]
    fn input_type(&self) -> String {
        self.inner.input_type.to_string()
    }

    #[getter]
    fn output_type(&self) -> String {
        box_type(&self.inner).expect("checked box").1.to_string()
    }

    #[getter]
    fn gate_count(&self) -> usize {
        self.inner.body.gate_count()
    }

    #[getter]
    fn lift_count(&self) -> usize {
        self.inner.body.lift_count()
    }

    /// Output density matrix for `rho`; defaults to the maximally mixed input.
    #[pyo3(signature = (rho=None))]
    fn simulate(&self, rho: Option<Vec<Vec<Complex>>>) -> PyResult<Vec<Vec<Complex>>> {
        let dim = self.inner.input_type.dim();
        let rho = match rho {
            Some(r) => from_rows(r)?,
            None => CMatrix::identity(dim).scale(Complex::new(1.0 / dim as f64, 0.0)),
        };
        let s = denote_box(&self.inner).map_err(value_err)?;
        Ok(to_rows(&s.apply(&rho).map_err(value_err)?))
    }

    /// Canonical surface text.
    #[pyo3(signature = (name="f"))]
    fn to_source(&self, name: &str) -> String {
        surface::print(&self.inner, name)
    }

    /// Register-level program text.
    fn lower(&self) -> String {
        surface::lower(&self.inner).to_string()
    }

    /// Equality up to renaming of wires.
    fn alpha_eq(&self, other: PyRef<'_, Circuit>) -> bool {
        self.inner.alpha_eq(&other.inner)
    }

    fn __repr__(&self) -> String {
        format!("<Circuit {} -> {}>", self.input_type(), self.output_type())
    }
}

/// Parse and elaborate every box in `text`; returns a dict keyed by box name.
#[pyfunction]
fn parse<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyDict>> {
    let prog = surface::parse(text).map_err(|e| ParseError::new_err(e.to_string()))?;
    let boxes = surface::elaborate(&prog).map_err(|e| match e {
        ElabError::Type { .. } => LinearityError::new_err(e.to_string()),
        ElabError::UnknownBox { .. } => PyValueError::new_err(e.to_string()),
    })?;
    let d = PyDict::new(py);
    for (name, b) in boxes {
        d.set_item(name, Circuit { inner: b })?;
    }
    Ok(d)
}

/// A built-in box such as `coin_flips@3` or `unitary_trans@ctrl.X`.
#[pyfunction]
fn builtin(name: &str) -> PyResult<Circuit> {
    corpus::builtin(name).map(|inner| Circuit { inner }).map_err(value_err)
}

/// Spellings of the sampled built-in corpus.
#[pyfunction]
fn builtin_names() -> Vec<String> {
    corpus::builtin_corpus().into_iter().map(|(n, _)| n).collect()
}

/// Largest entrywise difference of the two Choi matrices.
#[pyfunction]
fn max_deviation(a: PyRef<'_, Circuit>, b: PyRef<'_, Circuit>) -> PyResult<f64> {
    let sa = denote_box(&a.inner).map_err(value_err)?;
    let sb = denote_box(&b.inner).map_err(value_err)?;
    choi_deviation(&sa, &sb).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (a, b, eps=1e-9))]
fn equivalent(a: PyRef<'_, Circuit>, b: PyRef<'_, Circuit>, eps: f64) -> PyResult<bool> {
    let t = Tolerance::new(eps).ok_or_else(|| PyValueError::new_err("eps must be positive"))?;
    Ok(max_deviation(a, b)? <= t.eps())
}

/// Matrix of a unitary gate given by name, e.g. `ctrl.X` or `transpose H`.
#[pyfunction]
fn unitary(name: &str) -> PyResult<Vec<Vec<Complex>>> {
    let u = UnitaryGate::from_name(name).ok_or_else(|| PyValueError::new_err(format!("unknown gate {name:?}")))?;
    Ok(to_rows(&denote_unitary(&u)))
}

#[pymodule]
#[pyo3(name = "qwire")]
fn qwire_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Circuit>()?;
    m.add("ParseError", m.py().get_type::<ParseError>())?;
    m.add("LinearityError", m.py().get_type::<LinearityError>())?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(builtin, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_names, m)?)?;
    m.add_function(wrap_pyfunction!(max_deviation, m)?)?;
    m.add_function(wrap_pyfunction!(equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(unitary, m)?)?;
    Ok(())
}
