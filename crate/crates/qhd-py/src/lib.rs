use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qhd::family::{families_containing, generate_family_with, FamilySpec, FamilyTag, VertexBlowupPolicy};
use qhd::plumbing::determinant;
use qhd::templates::{parse_templates, shipped_templates};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A weighted tree; vertices are string ids with integer framings.
#[pyclass(name = "PlumbingGraph", module = "qhdpy", frozen)]
struct PyPlumbingGraph {
    inner: qhd::PlumbingGraph,
}

#[pymethods]
impl PyPlumbingGraph {
    #[new]
    fn new(vertices: Vec<(String, i64)>, edges: Vec<(String, String)>) -> PyResult<Self> {
        let inner = qhd::PlumbingGraph::new(vertices, edges).map_err(value_err)?;
        Ok(PyPlumbingGraph { inner })
    }

    #[staticmethod]
    fn star(center: i64, legs: Vec<Vec<i64>>) -> Self {
        PyPlumbingGraph { inner: qhd::PlumbingGraph::star(center, &legs) }
    }

    #[staticmethod]
    fn chain(framings: Vec<i64>) -> Self {
        PyPlumbingGraph { inner: qhd::PlumbingGraph::chain(&framings) }
    }

    /// Parse `star(c; [..], ..)`, the line-based text format, or JSON.
    #[staticmethod]
    fn parse(src: &str) -> PyResult<Self> {
        let s = src.trim();
        let inner = if s.starts_with("star(") {
            qhd::cli::parse_star_expr(s).map_err(value_err)?
        } else if s.starts_with('{') {
            let v: serde_json::Value = serde_json::from_str(s).map_err(value_err)?;
            qhd::PlumbingGraph::from_json(&v).map_err(value_err)?
        } else {
            qhd::PlumbingGraph::parse_text(s).map_err(value_err)?
        };
        Ok(PyPlumbingGraph { inner })
    }

    fn is_negative_definite(&self) -> bool {
        self.inner.is_negative_definite()
    }

    fn is_minimal(&self) -> bool {
        self.inner.is_minimal()
    }

    fn is_isomorphic(&self, other: &PyPlumbingGraph) -> bool {
        self.inner.is_isomorphic(&other.inner)
    }

    fn canonical_form(&self) -> String {
        self.inner.canonical_form().to_string()
    }

    /// Determinant of the intersection matrix, as a decimal string.
    fn determinant(&self) -> String {
        determinant(&self.inner.intersection_matrix().entries).to_string()
    }

    /// `(center_framing, legs)` or `None` when the graph is not star-shaped.
    fn star_shape(&self) -> Option<(i64, Vec<Vec<i64>>)> {
        self.inner.star_decomposition().ok().map(|s| (s.center_framing, s.legs))
    }

    fn families(&self) -> Vec<String> {
        families_containing(&self.inner).iter().map(|t| t.to_string()).collect()
    }

    fn dual(&self) -> PyResult<Self> {
        Ok(PyPlumbingGraph { inner: qhd::dual_star(&self.inner).map_err(value_err)? })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: &PyPlumbingGraph) -> bool {
        self.inner.is_isomorphic(&other.inner)
    }

    fn __repr__(&self) -> String {
        match self.inner.star_decomposition() {
            Ok(s) => format!("PlumbingGraph({s})"),
            Err(_) => format!("PlumbingGraph({})", self.inner.canonical_form()),
        }
    }
}

#[pyfunction]
fn hj_expand(n: u64, m: u64) -> PyResult<Vec<u64>> {
    Ok(qhd::hj_expand(n, m).map_err(value_err)?.coefficients().to_vec())
}

#[pyfunction]
fn hj_evaluate(coefficients: Vec<u64>) -> PyResult<(u64, u64)> {
    let e = qhd::HJExpansion::new(coefficients).map_err(value_err)?;
    qhd::hj_evaluate(&e).map_err(value_err)
}

#[pyfunction]
fn dual_expansion(n: u64, m: u64) -> PyResult<Vec<u64>> {
    Ok(qhd::dual_expansion(n, m).map_err(value_err)?.coefficients().to_vec())
}

/// Framings of the chain for the lens space L(p^2, pq - 1).
#[pyfunction]
fn g_chain(p: u64, q: u64) -> PyResult<Vec<i64>> {
    Ok(qhd::g_chain(p, q).map_err(value_err)?.to_framings())
}

#[pyfunction]
#[pyo3(signature = (family, max_vertices, edges_only = false))]
fn generate_family(family: &str, max_vertices: usize, edges_only: bool) -> PyResult<Vec<PyPlumbingGraph>> {
    let tag: FamilyTag = family.parse().map_err(value_err)?;
    let policy = if edges_only { VertexBlowupPolicy::Never } else { VertexBlowupPolicy::StarPreserving };
    Ok(generate_family_with(&FamilySpec::new(tag), max_vertices, policy)
        .into_iter()
        .map(|inner| PyPlumbingGraph { inner })
        .collect())
}

/// Recognition report as JSON; `templates` is the contents of a template
/// file, defaulting to the shipped set.
#[pyfunction]
#[pyo3(signature = (graph, templates = None))]
fn recognize(graph: &PyPlumbingGraph, templates: Option<&str>) -> PyResult<String> {
    let ts = match templates {
        Some(src) => parse_templates(src).map_err(value_err)?,
        None => shipped_templates(),
    };
    let report = qhd::recognize_qhd(&graph.inner, &ts);
    serde_json::to_string(&report).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (prop_id, k, max_nodes = qhd::embed::DEFAULT_NODE_BUDGET))]
fn verify_proposition(py: Python<'_>, prop_id: &str, k: usize, max_nodes: u64) -> PyResult<String> {
    let report = py.detach(|| qhd::verify_proposition(prop_id, k, max_nodes)).map_err(value_err)?;
    serde_json::to_string(&report).map_err(value_err)
}

/// Check a claim file (a shipped name or JSON text); returns the report as JSON.
#[pyfunction]
fn verify_claims(claims: &str) -> PyResult<String> {
    let src = qhd::plane::shipped_claims(claims).unwrap_or(claims);
    let report = qhd::verify_claims(src).map_err(value_err)?;
    serde_json::to_string(&report).map_err(value_err)
}

#[pymodule]
fn qhdpy(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPlumbingGraph>()?;
    m.add_function(wrap_pyfunction!(hj_expand, m)?)?;
    m.add_function(wrap_pyfunction!(hj_evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(dual_expansion, m)?)?;
    m.add_function(wrap_pyfunction!(g_chain, m)?)?;
    m.add_function(wrap_pyfunction!(generate_family, m)?)?;
    m.add_function(wrap_pyfunction!(recognize, m)?)?;
    m.add_function(wrap_pyfunction!(verify_proposition, m)?)?;
    m.add_function(wrap_pyfunction!(verify_claims, m)?)?;
    m.add("SHIPPED_CLAIMS", qhd::plane::SHIPPED_CLAIMS.iter().map(|(n, _)| *n).collect::<Vec<_>>())?;
    Ok(())
}
