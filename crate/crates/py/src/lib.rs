//! Python bindings. Reports with nested structure come back as JSON text;
//! `json.loads` turns them into dicts.

use std::sync::Arc;

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use semitotal::catalog::{catalog, catalog_keys as keys};
use semitotal::codes::code_report;
use semitotal::kempe::flip_beta_edge;
use semitotal::oracle::{run, Cap, OracleStatus, Query};
use semitotal::search::{Budget, Goal, ReductionTrace};
use semitotal::{
    apply_pattern, default_lacunar_stc, enumerate_mcaps, format_listing, lift_coloring, swap as swap_path,
    verify_covering, Coloring, Error, Graph, Mcap, PatternString,
};

fn err(e: Error) -> PyErr {
    match e {
        Error::UnknownCatalogKey(k) => PyKeyError::new_err(format!("unknown catalog key `{k}`")),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Graph", module = "semitotal", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyGraph {
    inner: Arc<Graph>,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges, name=None))]
    fn new(n: usize, edges: Vec<(usize, usize)>, name: Option<String>) -> PyResult<Self> {
        let mut g = Graph::new(n, &edges).map_err(err)?;
        if let Some(name) = name {
            g = g.with_name(name);
        }
        Ok(PyGraph { inner: Arc::new(g) })
    }

    #[staticmethod]
    pub fn from_catalog(key: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: catalog(key).map_err(err)?.graph,
        })
    }

    #[staticmethod]
    fn lcf(text: &str) -> PyResult<Self> {
        let (g, _) = semitotal::families::lcf(text).map_err(err)?;
        Ok(PyGraph { inner: Arc::new(g) })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let g: Graph = serde_json::from_str(text).map_err(json_err)?;
        Ok(PyGraph { inner: Arc::new(g) })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner.to_json()).expect("graph serializes")
    }

    #[getter]
    pub fn n(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    #[getter]
    fn name(&self) -> Option<String> {
        self.inner.name().map(str::to_string)
    }

    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn girth(&self) -> Option<usize> {
        self.inner.girth()
    }

    fn hamilton_cycle(&self) -> Option<Vec<usize>> {
        self.inner.find_hamilton_cycle(2_000_000)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({}, n={}, m={})",
            self.inner.name().unwrap_or("?"),
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

#[pyclass(name = "Mcap", module = "semitotal", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyMcap {
    vertices: Vec<usize>,
    #[pyo3(get)]
    edges: Vec<usize>,
    #[pyo3(get)]
    c0: u16,
    #[pyo3(get)]
    c1: u16,
    #[pyo3(get)]
    signature: String,
}

#[pymethods]
impl PyMcap {
    #[getter]
    pub fn vertices(&self) -> Vec<usize> {
        self.vertices.clone()
    }

    #[getter]
    fn k(&self) -> usize {
        self.edges.len()
    }

    fn __repr__(&self) -> String {
        format!("Mcap(({},{}) {})", self.c0, self.c1, self.signature)
    }
}

fn wrap_mcap(mu: &Coloring, p: Mcap) -> PyMcap {
    PyMcap {
        signature: p.signature(mu),
        c0: p.c0,
        c1: p.c1,
        vertices: p.vertices,
        edges: p.edges,
    }
}

#[pyclass(name = "Coloring", module = "semitotal", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyColoring {
    inner: Coloring,
    label: String,
}

fn wrap(inner: Coloring, label: &str) -> PyColoring {
    PyColoring {
        inner,
        label: label.to_string(),
    }
}

#[pymethods]
impl PyColoring {
    #[new]
    fn new(graph: &PyGraph, vertex_colors: Vec<u16>, edge_colors: Vec<u16>) -> PyResult<Self> {
        let mu = Coloring::new(graph.inner.clone(), vertex_colors, edge_colors).map_err(err)?;
        Ok(wrap(mu, graph.inner.name().unwrap_or("G")))
    }

    /// The catalog graph's lacunar STC, or one built from `pattern`.
    #[staticmethod]
    #[pyo3(signature = (key, pattern=None))]
    pub fn from_catalog(key: &str, pattern: Option<&str>) -> PyResult<Self> {
        let e = catalog(key).map_err(err)?;
        let mu = match pattern {
            Some(p) => {
                let h = e
                    .hamilton
                    .as_ref()
                    .ok_or_else(|| PyValueError::new_err(format!("`{key}` has no Hamilton cycle")))?;
                apply_pattern(&e.graph, h, &PatternString::parse(p).map_err(err)?, None).map_err(err)?
            }
            None => e.lacunar_stc().or_else(|_| e.stored_coloring()).map_err(err)?,
        };
        Ok(wrap(mu, &e.name))
    }

    /// The default lacunar STC along a Hamilton cycle of `graph`.
    #[staticmethod]
    #[pyo3(signature = (graph, cycle=None))]
    fn lacunar(graph: &PyGraph, cycle: Option<Vec<usize>>) -> PyResult<Self> {
        let g = &graph.inner;
        let cycle = match cycle.or_else(|| g.find_hamilton_cycle(2_000_000)) {
            Some(c) => c,
            None => return Err(PyValueError::new_err("no Hamilton cycle found")),
        };
        let h = g.verify_hamilton(&cycle).map_err(err)?;
        Ok(wrap(default_lacunar_stc(g, &h).map_err(err)?, g.name().unwrap_or("G")))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let json = serde_json::from_str(text).map_err(json_err)?;
        let mut label = String::from("G");
        let mu = Coloring::from_json(&json, |name| {
            let e = catalog(name)?;
            label = e.name;
            Ok(e.graph)
        })
        .map_err(err)?;
        if let Some(n) = mu.graph().name() {
            label = n.to_string();
        }
        Ok(wrap(mu, &label))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner.to_json()).expect("coloring serializes")
    }

    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.graph().clone(),
        }
    }

    #[getter]
    fn vertex_colors(&self) -> Vec<u16> {
        self.inner.vertex_colors().to_vec()
    }

    #[getter]
    fn edge_colors(&self) -> Vec<u16> {
        self.inner.edge_colors().to_vec()
    }

    #[getter]
    pub fn beta(&self) -> usize {
        self.inner.beta()
    }

    #[getter]
    pub fn gamma(&self) -> usize {
        self.inner.gamma()
    }

    #[getter]
    fn totals(&self) -> Vec<usize> {
        self.inner.totals()
    }

    fn beta_edges(&self) -> Vec<usize> {
        self.inner.beta_edges()
    }

    pub fn is_stc(&self) -> bool {
        self.inner.is_stc()
    }

    pub fn is_tc(&self) -> bool {
        self.inner.is_tc()
    }

    fn is_equitable(&self) -> bool {
        self.inner.is_equitable()
    }

    /// Listing text: one `c(v+e=t)` line per color, then the summary.
    #[pyo3(signature = (name=None))]
    pub fn listing(&self, name: Option<&str>) -> String {
        format_listing(&self.inner.listing(), name.unwrap_or(&self.label))
    }

    #[pyo3(signature = (c0=None, c1=None))]
    pub fn mcaps(&self, c0: Option<u16>, c1: Option<u16>) -> PyResult<Vec<PyMcap>> {
        let pair = match (c0, c1) {
            (Some(a), Some(b)) => Some((a, b)),
            (None, None) => None,
            _ => return Err(PyValueError::new_err("give both c0 and c1, or neither")),
        };
        Ok(enumerate_mcaps(&self.inner, pair)
            .map_err(err)?
            .into_iter()
            .map(|p| wrap_mcap(&self.inner, p))
            .collect())
    }

    /// Swaps along the MCAP with these vertices; returns a new coloring.
    pub fn swap(&self, vertices: Vec<usize>) -> PyResult<Self> {
        let p = Mcap::from_vertices(&self.inner, &vertices).map_err(err)?;
        Ok(wrap(swap_path(&self.inner, &p).map_err(err)?, &self.label))
    }

    fn flip(&self, edge: usize) -> PyResult<Self> {
        Ok(wrap(flip_beta_edge(&self.inner, edge).map_err(err)?, &self.label))
    }

    #[pyo3(signature = (goal="tc", budget=None, seed=0))]
    pub fn reduce(&self, goal: &str, budget: Option<usize>, seed: u64) -> PyResult<PyTrace> {
        let goal: Goal = goal.parse().map_err(err)?;
        let mut b = Budget::default();
        if let Some(n) = budget {
            b.nodes = n;
        }
        let trace = semitotal::reduce(&self.inner, goal, b, seed).map_err(err)?;
        Ok(PyTrace {
            trace,
            label: self.label.clone(),
        })
    }

    /// Code report as JSON text.
    fn codes(&self) -> String {
        serde_json::to_string(&code_report(&self.inner)).expect("report serializes")
    }

    fn to_dot(&self) -> String {
        semitotal::dot::coloring_to_dot(&self.inner, Some(&self.label), None)
    }

    fn __eq__(&self, other: &PyColoring) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Coloring({}, β={}, γ={})", self.label, self.inner.beta(), self.inner.gamma())
    }
}

#[pyclass(name = "Trace", module = "semitotal", frozen)]
pub struct PyTrace {
    trace: ReductionTrace,
    label: String,
}

#[pymethods]
impl PyTrace {
    #[getter]
    pub fn steps(&self) -> usize {
        self.trace.steps.len()
    }

    #[getter]
    pub fn goal_reached(&self) -> bool {
        self.trace.goal_reached
    }

    #[getter]
    fn nodes_expanded(&self) -> usize {
        self.trace.nodes_expanded
    }

    #[getter]
    pub fn final_coloring(&self) -> PyColoring {
        wrap(self.trace.final_coloring.clone(), &self.label)
    }

    /// `(β, γ)` before each step and after the last.
    fn scores(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self.trace.steps.iter().map(|s| s.before).collect();
        let f = &self.trace.final_coloring;
        out.push((f.beta(), f.gamma()));
        out
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.trace.to_json()).expect("trace serializes")
    }
}

#[pyfunction]
fn catalog_keys() -> Vec<String> {
    keys()
}

/// Lifts a coloring of the target through the source entry's recorded cover.
#[pyfunction]
pub fn lift(source: &str, coloring: &PyColoring) -> PyResult<PyColoring> {
    let e = catalog(source).map_err(err)?;
    let cover = e
        .cover
        .as_ref()
        .ok_or_else(|| PyValueError::new_err(format!("`{source}` has no recorded cover")))?;
    let target = catalog(&cover.target).map_err(err)?;
    let cm = verify_covering(&e.graph, &target.graph, &cover.map).map_err(err)?;
    let mu = Coloring::new(
        target.graph.clone(),
        coloring.inner.vertex_colors().to_vec(),
        coloring.inner.edge_colors().to_vec(),
    )
    .map_err(err)?;
    Ok(wrap(lift_coloring(&cm, &mu).map_err(err)?, &e.name))
}

/// Exact `total_chromatic`, `min_beta` or `min_gamma`; `None` when the cap
/// is exceeded or (for `min_gamma`) no total coloring exists.
#[pyfunction]
#[pyo3(signature = (query, graph, cap=None, consent=false))]
pub fn oracle(query: &str, graph: &PyGraph, cap: Option<usize>, consent: bool) -> PyResult<Option<usize>> {
    let q: Query = query.parse().map_err(err)?;
    let cap = match cap {
        Some(c) => Cap::new(c, consent).map_err(err)?,
        None => Cap::default(),
    };
    let r = run(q, &graph.inner, cap);
    Ok(match r.status {
        OracleStatus::Value => r.value,
        _ => None,
    })
}

#[pymodule]
#[pyo3(name = "semitotal")]
fn semitotal_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyColoring>()?;
    m.add_class::<PyMcap>()?;
    m.add_class::<PyTrace>()?;
    m.add_function(wrap_pyfunction!(catalog_keys, m)?)?;
    m.add_function(wrap_pyfunction!(lift, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    Ok(())
}
