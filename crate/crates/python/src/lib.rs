//! Python bindings: `msle.Graph`, validation, label lookup, competency
//! questions and the bundled dataset. Reports come back as plain dicts.

use std::collections::BTreeMap;

use msle_core::dataset::{self, Dataset as CoreDataset};
use msle_core::maturity::{self, CqSuite, RealWorldSpec};
use msle_core::query::parse_query_with;
use msle_core::shacl::{self, parse_shapes};
use msle_core::skos::{self, MatchMode};
use msle_core::{evaluate, isomorphic, parse_turtle, serialize_turtle, Inference, Iri};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn inference(name: &str) -> PyResult<Inference> {
    match name {
        "none" => Ok(Inference::None),
        "rdfs" => Ok(Inference::Rdfs),
        other => Err(PyValueError::new_err(format!("unknown inference {other:?}, expected \"none\" or \"rdfs\""))),
    }
}

fn iri(text: &str) -> PyResult<Iri> {
    Iri::new(text.trim_start_matches('<').trim_end_matches('>')).map_err(value_error)
}

fn json_to_py<'py>(py: Python<'py>, value: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    use serde_json::Value;
    match value {
        Value::Null => Ok(py.None().into_bound(py)),
        Value::Bool(b) => b.into_bound_py_any(py),
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.into_bound_py_any(py),
            (None, Some(i)) => i.into_bound_py_any(py),
            _ => n.as_f64().unwrap_or(f64::NAN).into_bound_py_any(py),
        },
        Value::String(s) => s.into_bound_py_any(py),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            Ok(list.into_any())
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, v) in map {
                dict.set_item(k, json_to_py(py, v)?)?;
            }
            Ok(dict.into_any())
        }
    }
}

fn to_py<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    json_to_py(py, &serde_json::to_value(value).map_err(value_error)?)
}

/// An in-memory RDF graph.
#[pyclass(name = "Graph", module = "msle", skip_from_py_object)]
#[derive(Clone, Default)]
struct PyGraph {
    inner: msle_core::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new() -> Self {
        Self::default()
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_turtle(text).map(|inner| PyGraph { inner }).map_err(value_error)
    }

    fn serialize(&self) -> String {
        serialize_turtle(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("<msle.Graph with {} triples>", self.inner.len())
    }

    /// Triples as `(subject, predicate, object)` strings in N-Triples form.
    fn triples(&self) -> Vec<(String, String, String)> {
        self.inner
            .iter()
            .map(|t| (t.subject().to_string(), t.predicate().to_string(), t.object().to_string()))
            .collect()
    }

    fn prefixes(&self) -> BTreeMap<String, String> {
        self.inner.prefixes().clone()
    }

    fn merge(&mut self, other: &PyGraph) {
        self.inner.merge(&other.inner);
    }

    fn isomorphic(&self, other: &PyGraph) -> bool {
        isomorphic(&self.inner, &other.inner)
    }

    /// Runs a SELECT query. Prefixes default to the graph's own, overlaid
    /// by `prefixes`. Rows map variable names to N-Triples term strings.
    #[pyo3(signature = (text, inference = "none", prefixes = None))]
    fn query(
        &self,
        text: &str,
        inference: &str,
        prefixes: Option<BTreeMap<String, String>>,
    ) -> PyResult<Vec<BTreeMap<String, String>>> {
        let mut known = self.inner.prefixes().clone();
        known.extend(prefixes.unwrap_or_default());
        let query = parse_query_with(text, &known).map_err(value_error)?;
        let rows = evaluate(&self.inner, &query, self::inference(inference)?).map_err(value_error)?;
        Ok(rows.to_string_rows())
    }

    #[pyo3(signature = (shapes, inference = "none"))]
    fn validate<'py>(&self, py: Python<'py>, shapes: &PyGraph, inference: &str) -> PyResult<Bound<'py, PyAny>> {
        validate(py, self, shapes, inference)
    }
}

/// Validates `data` against the shapes in `shapes`; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (data, shapes, inference = "none"))]
fn validate<'py>(py: Python<'py>, data: &PyGraph, shapes: &PyGraph, inference: &str) -> PyResult<Bound<'py, PyAny>> {
    let set = parse_shapes(&shapes.inner).map_err(value_error)?;
    let report = shacl::validate_with(&data.inner, &set.shapes, self::inference(inference)?);
    to_py(py, &report)
}

#[pyfunction]
#[pyo3(signature = (graph, concept, lang = None))]
fn labels<'py>(py: Python<'py>, graph: &PyGraph, concept: &str, lang: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &skos::labels_of(&graph.inner, &iri(concept)?, lang))
}

/// Concepts with a label equal to `text` ignoring case, or containing it
/// when `substring` is set.
#[pyfunction]
#[pyo3(signature = (graph, text, substring = false))]
fn find_by_label(graph: &PyGraph, text: &str, substring: bool) -> Vec<String> {
    let mode = if substring { MatchMode::Substring } else { MatchMode::Exact };
    skos::find_by_label(&graph.inner, text, mode)
        .into_iter()
        .map(|i| i.as_str().to_owned())
        .collect()
}

#[pyfunction]
#[pyo3(signature = (graph, concept, lang = None))]
fn definition(graph: &PyGraph, concept: &str, lang: Option<&str>) -> PyResult<Option<String>> {
    Ok(skos::definition_of(&graph.inner, &iri(concept)?, lang))
}

/// Runs a competency-question suite given as JSON text.
#[pyfunction]
fn run_cq_suite<'py>(py: Python<'py>, graph: &PyGraph, suite_json: &str) -> PyResult<Bound<'py, PyAny>> {
    let suite = CqSuite::from_json(suite_json).map_err(value_error)?;
    to_py(py, &maturity::run_cq_suite(&graph.inner, &suite))
}

#[pyfunction]
#[pyo3(signature = (data, shapes, realworld_json = None))]
fn completeness<'py>(
    py: Python<'py>,
    data: &PyGraph,
    shapes: &PyGraph,
    realworld_json: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let set = parse_shapes(&shapes.inner).map_err(value_error)?;
    let specs = match realworld_json {
        Some(text) => RealWorldSpec::list_from_json(text).map_err(value_error)?,
        None => Vec::new(),
    };
    let out = PyDict::new(py);
    out.set_item("constraint_completeness", to_py(py, &maturity::constraint_completeness(&data.inner, &set.shapes))?)?;
    out.set_item("realworld_completeness", to_py(py, &maturity::realworld_completeness(&data.inner, &specs))?)?;
    Ok(out.into_any())
}

/// The bundled MSLE ontology, shapes and suites.
#[pyclass(name = "Dataset", module = "msle")]
struct PyDataset {
    inner: CoreDataset,
}

#[pymethods]
impl PyDataset {
    #[getter]
    fn data(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.data.clone(),
        }
    }

    #[getter]
    fn shapes(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.shapes_graph.clone(),
        }
    }

    #[getter]
    fn suite_json(&self) -> String {
        self.inner.suite.to_json()
    }

    fn run_cq_suite<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &maturity::run_cq_suite(&self.inner.data, &self.inner.suite))
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &shacl::validate(&self.inner.data, &self.inner.shapes.shapes))
    }

    fn maturity_report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let ds = &self.inner;
        to_py(py, &maturity::maturity_report(&ds.data, &ds.suite, &ds.shapes.shapes, &ds.realworld))
    }
}

#[pyfunction]
fn load_bundled() -> PyResult<PyDataset> {
    dataset::load_bundled().map(|inner| PyDataset { inner }).map_err(value_error)
}

#[pymodule]
fn msle(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyDataset>()?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(labels, m)?)?;
    m.add_function(wrap_pyfunction!(find_by_label, m)?)?;
    m.add_function(wrap_pyfunction!(definition, m)?)?;
    m.add_function(wrap_pyfunction!(run_cq_suite, m)?)?;
    m.add_function(wrap_pyfunction!(completeness, m)?)?;
    m.add_function(wrap_pyfunction!(load_bundled, m)?)?;
    Ok(())
}
