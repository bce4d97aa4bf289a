//! Python bindings: a `Bialgebroid` class over the core crate and a `run`
//! function that executes any `bgd` subcommand and returns its report.

use bialgebroid::cli::{self, Cli, Outcome};
use bialgebroid::frobenius::{frobenius_system, Extension};
use bialgebroid::integral::{is_left_integral, left_integrals, separability_check};
use bialgebroid::io::{load_spec, SpecDocument};
use bialgebroid::matrix::vec_to_strings;
use bialgebroid::{fixtures, Error, LeftBialgebroid, Scalar};
use clap::Parser;
use pyo3::exceptions::{PyNotImplementedError, PyOSError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Unsupported(_) => PyNotImplementedError::new_err(e.to_string()),
        Error::Io(_) => PyOSError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// A finite-dimensional left bialgebroid. Elements are lists of
/// coordinates; entries may be ints or strings such as `"2/3"`.
#[pyclass(name = "Bialgebroid", module = "bialgebroid", unsendable)]
struct PyBialgebroid {
    inner: LeftBialgebroid,
}

impl PyBialgebroid {
    fn scalars(&self, xs: &[Bound<'_, PyAny>], len: usize, what: &str) -> PyResult<Vec<Scalar>> {
        if xs.len() != len {
            return Err(PyValueError::new_err(format!("{what}: {} coordinates where {len} are expected", xs.len())));
        }
        let f = self.inner.field();
        xs.iter().map(|x| f.parse(&x.str()?.to_string()).map_err(py_err)).collect()
    }

    fn element(&self, u: &[Bound<'_, PyAny>]) -> PyResult<Vec<Scalar>> {
        self.scalars(u, self.inner.dim(), "element of U")
    }

    fn base_element(&self, a: &[Bound<'_, PyAny>]) -> PyResult<Vec<Scalar>> {
        self.scalars(a, self.inner.base_dim(), "element of A")
    }
}

#[pymethods]
impl PyBialgebroid {
    /// A built-in fixture; see `presets()`.
    #[staticmethod]
    #[pyo3(signature = (name, prime = 2, rank = 1))]
    fn preset(name: &str, prime: u32, rank: usize) -> PyResult<Self> {
        Ok(PyBialgebroid { inner: fixtures::preset(name, prime, rank).map_err(py_err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let p = SpecDocument::from_json(text).and_then(|d| d.build()).map_err(py_err)?;
        Ok(PyBialgebroid { inner: p.bialgebroid })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let p = load_spec(path).and_then(|d| d.build()).map_err(py_err)?;
        Ok(PyBialgebroid { inner: p.bialgebroid })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn base_dim(&self) -> usize {
        self.inner.base_dim()
    }

    /// 0 over the rationals.
    #[getter]
    fn characteristic(&self) -> u32 {
        self.inner.field().characteristic()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.total().labels().to_vec()
    }

    #[getter]
    fn base_labels(&self) -> Vec<String> {
        self.inner.base().labels().to_vec()
    }

    fn is_left_hopf(&self) -> bool {
        self.inner.is_left_hopf()
    }

    fn is_right_hopf(&self) -> bool {
        self.inner.is_right_hopf()
    }

    /// Every axiom as a list of `{check_id, item, status, ...}` dicts.
    fn check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let text = serde_json::to_string(&self.inner.check().items).map_err(|e| py_err(e.into()))?;
        json_to_py(py, &text)
    }

    fn one(&self) -> Vec<String> {
        vec_to_strings(&self.inner.one())
    }

    fn basis(&self, i: usize) -> PyResult<Vec<String>> {
        if i >= self.inner.dim() {
            return Err(PyValueError::new_err(format!("basis index {i} out of range")));
        }
        Ok(vec_to_strings(&self.inner.basis(i)))
    }

    fn mul(&self, x: Vec<Bound<'_, PyAny>>, y: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
        Ok(vec_to_strings(&self.inner.mul(&self.element(&x)?, &self.element(&y)?)))
    }

    fn source(&self, a: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
        Ok(vec_to_strings(&self.inner.s(&self.base_element(&a)?)))
    }

    fn target(&self, a: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
        Ok(vec_to_strings(&self.inner.t(&self.base_element(&a)?)))
    }

    fn counit(&self, u: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
        Ok(vec_to_strings(&self.inner.eps(&self.element(&u)?)))
    }

    /// Coordinates of `Δ(u)` in a basis of the balanced tensor square.
    fn coproduct(&self, u: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
        Ok(vec_to_strings(&self.inner.coproduct(&self.element(&u)?).map_err(py_err)?))
    }

    /// `u ↦ u₊ ⊗ u₋` (left) or `u₍₊₎ ⊗ u₍₋₎` (right), as class coordinates.
    #[pyo3(signature = (u, side = "left"))]
    fn translate(&self, u: Vec<Bound<'_, PyAny>>, side: &str) -> PyResult<Vec<String>> {
        let u = self.element(&u)?;
        let v = match side {
            "left" => self.inner.translate_left(&u),
            "right" => self.inner.translate_right(&u),
            _ => return Err(PyValueError::new_err("side is \"left\" or \"right\"")),
        };
        Ok(vec_to_strings(&v.map_err(py_err)?))
    }

    /// A `k`-basis of the left integrals.
    fn left_integrals(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(left_integrals(&self.inner).map_err(py_err)?.basis.iter().map(|v| vec_to_strings(v)).collect())
    }

    fn is_left_integral(&self, l: Vec<Bound<'_, PyAny>>) -> PyResult<bool> {
        Ok(is_left_integral(&self.inner, &self.element(&l)?))
    }

    /// `(separable, reason, normalized_integral or None)`
    fn maschke(&self) -> PyResult<(bool, String, Option<Vec<String>>)> {
        let s = separability_check(&self.inner).map_err(py_err)?;
        Ok((s.separable(), s.reason(), s.normalized_integral.as_deref().map(vec_to_strings)))
    }

    /// `(theta rows, tensor lift, t0)` for the extension `"s"` or `"t"`, or
    /// None when no Frobenius system exists.
    #[pyo3(signature = (extension = "s"))]
    #[allow(clippy::type_complexity)]
    fn frobenius_system(&self, extension: &str) -> PyResult<Option<(Vec<Vec<String>>, Vec<String>, Vec<String>)>> {
        let ext = match extension {
            "s" => Extension::ViaS,
            "t" => Extension::ViaT,
            _ => return Err(PyValueError::new_err("extension is \"s\" or \"t\"")),
        };
        let sys = frobenius_system(&self.inner, ext).map_err(py_err)?;
        Ok(sys.map(|s| (s.theta.row_vectors().iter().map(|r| vec_to_strings(r)).collect(), vec_to_strings(&s.tensor), vec_to_strings(&s.t0))))
    }

    /// The canonical JSON presentation.
    fn to_json(&self) -> PyResult<String> {
        SpecDocument::from_bialgebroid(&self.inner).to_canonical_json().map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("Bialgebroid(dim={}, base_dim={}, characteristic={})", self.inner.dim(), self.inner.base_dim(), self.inner.field().characteristic())
    }
}

/// Runs a `bgd` subcommand, e.g. `run(["maschke", "--preset", "dual-numbers"])`.
/// Reports come back as dicts and `example`/`export` as JSON text.
#[pyfunction]
fn run<'py>(py: Python<'py>, args: Vec<String>) -> PyResult<Bound<'py, PyAny>> {
    let cli = Cli::try_parse_from(std::iter::once("bgd".to_string()).chain(args)).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let (outcome, _) = cli::run(&cli.command).map_err(py_err)?;
    match outcome {
        Outcome::Report(doc) => json_to_py(py, &doc.canonical_json().map_err(py_err)?),
        Outcome::Document(text) => Ok(text.into_pyobject(py)?.into_any()),
    }
}

#[pyfunction]
fn presets() -> Vec<&'static str> {
    fixtures::PRESETS.to_vec()
}

#[pymodule]
#[pyo3(name = "bialgebroid")]
fn bialgebroid_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBialgebroid>()?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(presets, m)?)?;
    Ok(())
}
