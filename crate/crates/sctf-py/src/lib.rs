use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use sctf::graph::{complement, subgraph_complement, Graph, VertexSet};
use sctf::hardness::hardness_verdict;
use sctf::io::{parse_graph, write_graph};
use sctf::iso::{contains_induced, is_free_of, is_isomorphic};
use sctf::modular::{is_prime, maximal_strong_modules, quotient_graph};
use sctf::reductions::{build_p6_instance, forward_solution};
use sctf::sat::{brute_sat, lift_3sat_to_4satge2, parse_dimacs, write_dimacs};
use sctf::solvers::{brute_force_solve, paw_solve, BruteOracle, DEFAULT_BUDGET};
use sctf::trees::{build_tree, parse_pattern, parse_tree_spec};

fn err(e: sctf::error::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::from_edges(n, &edges).map_err(err)? })
    }

    /// Parse the `n m` + edge-lines text format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: parse_graph(text).map_err(err)? })
    }

    /// Tree spec such as `T2,5`, `C1,2,4`, or the keywords `paw` / `K<n>`.
    #[staticmethod]
    fn pattern(spec: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: parse_pattern(spec).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.inner.n() && v < self.inner.n() && self.inner.has_edge(u, v)
    }

    fn to_text(&self) -> String {
        write_graph(&self.inner)
    }

    fn complement(&self) -> Self {
        PyGraph { inner: complement(&self.inner) }
    }

    /// `G ⊕ S`: flip every pair inside `s`.
    fn flip(&self, s: Vec<usize>) -> PyResult<Self> {
        Ok(PyGraph { inner: subgraph_complement(&self.inner, &VertexSet::from(s)).map_err(err)? })
    }

    fn is_free_of(&self, h: &PyGraph) -> bool {
        is_free_of(&self.inner, &h.inner)
    }

    /// Vertices of an induced copy of `h`, or `None`.
    fn induced_copy(&self, h: &PyGraph) -> Option<Vec<usize>> {
        contains_induced(&self.inner, &h.inner).map(VertexSet::into_vec)
    }

    fn is_isomorphic(&self, other: &PyGraph) -> bool {
        is_isomorphic(&self.inner, &other.inner)
    }

    fn is_prime(&self) -> bool {
        is_prime(&self.inner)
    }

    fn modules(&self) -> PyResult<Vec<Vec<usize>>> {
        let part = maximal_strong_modules(&self.inner).map_err(err)?;
        Ok(part.parts.into_iter().map(VertexSet::into_vec).collect())
    }

    fn quotient(&self) -> PyResult<Self> {
        Ok(PyGraph { inner: quotient_graph(&self.inner).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }

    fn __eq__(&self, other: &PyGraph) -> bool {
        self.inner == other.inner
    }
}

#[pyfunction]
fn tree(spec: &str) -> PyResult<PyGraph> {
    let t = build_tree(&parse_tree_spec(spec).map_err(err)?).map_err(err)?;
    Ok(PyGraph { inner: t })
}

/// `(verdict, summary line)` for a tree spec.
#[pyfunction]
fn classify(spec: &str) -> PyResult<(String, String)> {
    let t = build_tree(&parse_tree_spec(spec).map_err(err)?).map_err(err)?;
    let cert = hardness_verdict(&t).map_err(err)?;
    Ok((cert.verdict.label().to_string(), cert.summary()))
}

/// Canonical-first `S` with `G ⊕ S` free of `h`, or `None`.
#[pyfunction]
#[pyo3(signature = (g, h, budget = DEFAULT_BUDGET))]
fn solve_brute(py: Python<'_>, g: &PyGraph, h: &PyGraph, budget: u128) -> PyResult<Option<Vec<usize>>> {
    let (g, h) = (g.inner.clone(), h.inner.clone());
    let r = py.detach(move || brute_force_solve(&g, &h, budget)).map_err(err)?;
    Ok(r.map(|s| s.members.into_vec()))
}

#[pyfunction]
#[pyo3(signature = (g, budget = DEFAULT_BUDGET))]
fn solve_paw(py: Python<'_>, g: &PyGraph, budget: u128) -> PyResult<Option<Vec<usize>>> {
    let g = g.inner.clone();
    let r = py.detach(move || paw_solve(&g, &BruteOracle { budget })).map_err(err)?;
    Ok(r.map(|s| s.members.into_vec()))
}

/// First satisfying assignment of a DIMACS formula as booleans for x1..xn.
#[pyfunction]
fn brute_sat_dimacs(text: &str) -> PyResult<Option<Vec<bool>>> {
    let phi = parse_dimacs(text).map_err(err)?;
    Ok(brute_sat(&phi).map_err(err)?.map(|a| a.0))
}

#[pyfunction]
fn lift_3sat(text: &str) -> PyResult<String> {
    let phi = parse_dimacs(text).map_err(err)?;
    Ok(write_dimacs(&lift_3sat_to_4satge2(&phi).map_err(err)?))
}

/// The P6 gadget of a 3-CNF: `(graph, role strings, forward S or None)`.
#[pyfunction]
fn p6_instance(text: &str) -> PyResult<(PyGraph, Vec<String>, Option<Vec<usize>>)> {
    let phi = parse_dimacs(text).map_err(err)?;
    let inst = build_p6_instance(&phi).map_err(err)?;
    let s = match brute_sat(&phi).map_err(err)? {
        Some(a) => Some(forward_solution(&inst, &a).map_err(err)?.members.into_vec()),
        None => None,
    };
    let roles = inst.roles.iter().map(|r| r.to_string()).collect();
    Ok((PyGraph { inner: inst.graph }, roles, s))
}

#[pymodule]
fn sctf_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(tree, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(solve_brute, m)?)?;
    m.add_function(wrap_pyfunction!(solve_paw, m)?)?;
    m.add_function(wrap_pyfunction!(brute_sat_dimacs, m)?)?;
    m.add_function(wrap_pyfunction!(lift_3sat, m)?)?;
    m.add_function(wrap_pyfunction!(p6_instance, m)?)?;
    Ok(())
}
