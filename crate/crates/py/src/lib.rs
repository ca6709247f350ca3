//! Python bindings. Time arguments are label specs such as `"t0..t2"`,
//! `"t1"` or `"t0,t2"`; keys are tuples of strings, and triangle keys are
//! tuples of three member tuples.

use std::path::PathBuf;
use std::sync::Arc;

use graphtempo::export::{
    aggregate_to_csv, aggregate_to_dot, aggregate_to_json, evolution_to_csv, evolution_to_dot, evolution_to_json,
    exploration_heatmap_csv, exploration_to_json, temporal_graph_to_dot, temporal_graph_to_json,
};
use graphtempo::synth::{random_graph, synthetic_graph, RandomSpec};
use graphtempo::{
    AggMode, Event, ExplorationQuery, Extremal, GraphError, IntervalSet, Key, LoadOptions, Pattern, Reference,
    SetOp, Strategy, Target, TimeDomain, Value,
};
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList, PyString, PyTuple};

pyo3::create_exception!(graphtempo, GraphTempoError, PyValueError);

fn err(e: GraphError) -> PyErr {
    match e {
        GraphError::Io(io) => PyOSError::new_err(io.to_string()),
        other => GraphTempoError::new_err(other.to_string()),
    }
}

fn parse<T: std::str::FromStr<Err = GraphError>>(s: &str) -> PyResult<T> {
    s.parse().map_err(err)
}

fn value_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    match v {
        Value::Atom(s) => Ok(PyString::new(py, s).into_any()),
        Value::Tuple(items) => {
            let items = items.iter().map(|x| value_to_py(py, x)).collect::<PyResult<Vec<_>>>()?;
            Ok(PyTuple::new(py, items)?.into_any())
        }
    }
}

fn key_to_py<'py>(py: Python<'py>, k: &Key) -> PyResult<Bound<'py, PyTuple>> {
    let items = k.iter().map(|v| value_to_py(py, v)).collect::<PyResult<Vec<_>>>()?;
    PyTuple::new(py, items)
}

fn value_from_py(obj: &Bound<'_, PyAny>) -> PyResult<Value> {
    if let Ok(s) = obj.extract::<String>() {
        return Ok(Value::atom(s));
    }
    let items: Vec<Bound<'_, PyAny>> = obj.extract()?;
    Ok(Value::Tuple(items.iter().map(value_from_py).collect::<PyResult<_>>()?))
}

/// A key from a sequence of values; triangle keys are put in canonical order.
fn key_from_py(obj: &Bound<'_, PyAny>) -> PyResult<Key> {
    if obj.extract::<String>().is_ok() {
        return Ok(vec![value_from_py(obj)?]);
    }
    let items: Vec<Bound<'_, PyAny>> = obj.extract()?;
    let mut key: Key = items.iter().map(value_from_py).collect::<PyResult<_>>()?;
    if !key.is_empty() && key.iter().all(|v| matches!(v, Value::Tuple(_))) {
        key.sort();
    }
    Ok(key)
}

fn reference(s: &str) -> PyResult<Reference> {
    match s.to_ascii_lowercase().replace('-', "_").as_str() {
        "old_fixed" => Ok(Reference::OldFixed),
        "new_fixed" => Ok(Reference::NewFixed),
        _ => Err(PyValueError::new_err(format!("reference must be 'old_fixed' or 'new_fixed', got {s:?}"))),
    }
}

fn mode(s: &str) -> PyResult<AggMode> {
    parse(s)
}

#[pyclass(name = "TemporalGraph", module = "graphtempo", frozen)]
struct PyTemporalGraph {
    inner: Arc<graphtempo::TemporalGraph>,
}

impl PyTemporalGraph {
    fn wrap(g: graphtempo::TemporalGraph) -> Self {
        PyTemporalGraph { inner: Arc::new(g) }
    }

    fn set(&self, spec: &str) -> PyResult<IntervalSet> {
        self.inner.time().parse_set(spec).map_err(err)
    }

    fn point(&self, label: &str) -> PyResult<usize> {
        self.inner
            .time()
            .index_of(label)
            .ok_or_else(|| GraphTempoError::new_err(format!("unknown time label {label:?}")))
    }

    fn binary(&self, op: SetOp, t1: &str, t2: &str) -> PyResult<Self> {
        op.apply(&self.inner, &self.set(t1)?, &self.set(t2)?).map(Self::wrap).map_err(err)
    }

    fn target(
        &self,
        attrs: &[String],
        node: Option<&Bound<'_, PyAny>>,
        edge: Option<(Bound<'_, PyAny>, Bound<'_, PyAny>)>,
        pattern: Option<&Bound<'_, PyAny>>,
        mode: AggMode,
    ) -> PyResult<Target> {
        let names: Vec<&str> = attrs.iter().map(String::as_str).collect();
        match (node, edge, pattern) {
            (Some(k), None, None) => Ok(Target::node(&names, key_from_py(k)?, mode)),
            (None, Some((a, b)), None) => Ok(Target::edge(&names, key_from_py(&a)?, key_from_py(&b)?, mode)),
            (None, None, Some(k)) => Ok(Target::pattern(&names, key_from_py(k)?, mode)),
            _ => Err(PyValueError::new_err("give exactly one of node, edge or pattern")),
        }
    }
}

#[pymethods]
impl PyTemporalGraph {
    /// The five-author, three-point example graph.
    #[staticmethod]
    fn fixture() -> Self {
        Self::wrap(graphtempo::build_fixture_fig1())
    }

    /// Loads CSV files. `varying` maps attribute names to files.
    #[staticmethod]
    #[pyo3(signature = (edges, r#static=None, varying=None, presence=None, directed=false))]
    fn load(
        edges: PathBuf,
        r#static: Option<PathBuf>,
        varying: Option<Vec<(String, PathBuf)>>,
        presence: Option<PathBuf>,
        directed: bool,
    ) -> PyResult<Self> {
        let opts = LoadOptions { edges, static_file: r#static, varying: varying.unwrap_or_default(), presence, directed };
        graphtempo::load_temporal_graph(&opts).map(Self::wrap).map_err(err)
    }

    /// Seeded random graph with attributes gender, group and level.
    #[staticmethod]
    #[pyo3(signature = (nodes=8, points=4, seed=0, edge_density=0.3, directed=false))]
    fn random(nodes: usize, points: usize, seed: u64, edge_density: f64, directed: bool) -> Self {
        let spec = RandomSpec { nodes, points, edge_density, directed, ..RandomSpec::default() };
        Self::wrap(random_graph(&spec, seed))
    }

    #[staticmethod]
    #[pyo3(signature = (nodes, edges, points, seed=0))]
    fn synthetic(nodes: usize, edges: usize, points: usize, seed: u64) -> Self {
        Self::wrap(synthetic_graph(nodes, edges, points, seed))
    }

    #[getter]
    fn time_labels(&self) -> Vec<String> {
        self.inner.time().labels().to_vec()
    }

    #[getter]
    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn directed(&self) -> bool {
        self.inner.is_directed()
    }

    #[getter]
    fn attributes(&self) -> Vec<String> {
        self.inner.attrs().names().into_iter().map(String::from).collect()
    }

    fn nodes_at(&self, label: &str) -> PyResult<Vec<String>> {
        Ok(self.inner.nodes_at(self.point(label)?).into_iter().map(String::from).collect())
    }

    fn edges_at(&self, label: &str) -> PyResult<Vec<(String, String)>> {
        let t = self.point(label)?;
        Ok(self.inner.edges_at(t).into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect())
    }

    /// Value of `attr` for `node` at `label`, or None when missing.
    fn attribute(&self, node: &str, attr: &str, label: &str) -> PyResult<Option<String>> {
        let v = self.inner.lookup_attribute(node, attr, self.point(label)?).map_err(err)?;
        Ok(v.map(|v| v.to_string()))
    }

    fn export(&self, dir: PathBuf) -> PyResult<()> {
        graphtempo::export_temporal_graph(&self.inner, &dir).map(drop).map_err(err)
    }

    fn to_json(&self) -> String {
        temporal_graph_to_json(&self.inner)
    }

    fn to_dot(&self) -> String {
        temporal_graph_to_dot(&self.inner)
    }

    fn project(&self, interval: &str) -> PyResult<Self> {
        let set = self.set(interval)?;
        let iv = match set.iter().collect::<Vec<_>>().as_slice() {
            [iv] => **iv,
            _ => return Err(PyValueError::new_err("project takes one contiguous interval")),
        };
        graphtempo::project(&self.inner, iv).map(Self::wrap).map_err(err)
    }

    fn union(&self, t1: &str, t2: &str) -> PyResult<Self> {
        self.binary(SetOp::Union, t1, t2)
    }

    fn intersection(&self, t1: &str, t2: &str) -> PyResult<Self> {
        self.binary(SetOp::Intersection, t1, t2)
    }

    fn difference(&self, t1: &str, t2: &str) -> PyResult<Self> {
        self.binary(SetOp::Difference, t1, t2)
    }

    #[pyo3(signature = (attrs, interval, mode="dist", static_fast=false))]
    fn aggregate(&self, py: Python<'_>, attrs: Vec<String>, interval: &str, mode: &str, static_fast: bool) -> PyResult<PyAggregateGraph> {
        let (t, m) = (self.set(interval)?, self::mode(mode)?);
        let g = &self.inner;
        let agg = py.detach(|| {
            if static_fast {
                graphtempo::aggregate_static_fast(g, &t, &attrs, m)
            } else {
                graphtempo::aggregate(g, &t, &attrs, m)
            }
        });
        agg.map(PyAggregateGraph::from).map_err(err)
    }

    /// Triangle ids alive at each point of `interval` (default: all points).
    #[pyo3(signature = (interval=None))]
    fn triangles<'py>(&self, py: Python<'py>, interval: Option<&str>) -> PyResult<Bound<'py, PyDict>> {
        let t = match interval {
            Some(s) => self.set(s)?,
            None => IntervalSet::from(self.inner.time().full()),
        };
        let tri = graphtempo::build_tri_graph(&self.inner, &t).map_err(err)?;
        let out = PyDict::new(py);
        for p in t.points() {
            let ids: Vec<&str> = (0..tri.node_count()).filter(|&r| tri.nodes().get(r, p)).map(|r| tri.node_id(r)).collect();
            out.set_item(self.inner.time().label(p), ids)?;
        }
        Ok(out)
    }

    /// Triangle aggregation over `interval`, or over the result of `op`
    /// applied to `t1` and `t2`.
    #[pyo3(signature = (attrs, interval=None, mode="dist", op=None, t1=None, t2=None, strategy=None))]
    #[allow(clippy::too_many_arguments)]
    fn aggregate_pattern(
        &self,
        py: Python<'_>,
        attrs: Vec<String>,
        interval: Option<&str>,
        mode: &str,
        op: Option<&str>,
        t1: Option<&str>,
        t2: Option<&str>,
        strategy: Option<&str>,
    ) -> PyResult<PyAggregateGraph> {
        let m = self::mode(mode)?;
        let g = &self.inner;
        let agg = match op {
            Some(op) => {
                let op: SetOp = parse(op)?;
                let (Some(t1), Some(t2)) = (t1, t2) else {
                    return Err(PyValueError::new_err("op needs t1 and t2"));
                };
                let (t1, t2) = (self.set(t1)?, self.set(t2)?);
                let t = match interval {
                    Some(s) => self.set(s)?,
                    None if op == SetOp::Difference => t1.clone(),
                    None => t1.union(&t2),
                };
                let s = match strategy {
                    Some(s) => parse(s)?,
                    None => Strategy::default_for(op),
                };
                py.detach(|| graphtempo::aggregate_pattern(g, Some((op, &t1, &t2)), &t, &attrs, m, s))
            }
            None => {
                let t = match interval {
                    Some(s) => self.set(s)?,
                    None => IntervalSet::from(g.time().full()),
                };
                py.detach(|| graphtempo::aggregate_pattern(g, None, &t, &attrs, m, Strategy::TriFirst))
            }
        };
        agg.map(PyAggregateGraph::from).map_err(err)
    }

    #[pyo3(signature = (attrs, told, tnew, mode="dist", pattern=None))]
    fn evolution(&self, attrs: Vec<String>, told: &str, tnew: &str, mode: &str, pattern: Option<&str>) -> PyResult<PyAggregateEvolution> {
        let pattern: Option<Pattern> = pattern.map(parse).transpose()?;
        let evo = graphtempo::aggregate_evolution(&self.inner, &self.set(told)?, &self.set(tnew)?, &attrs, self::mode(mode)?, pattern)
            .map_err(err)?;
        Ok(PyAggregateEvolution { inner: evo })
    }

    /// Event labels ("S", "G", "R" combinations) of base nodes and edges.
    fn evolution_overlay<'py>(&self, py: Python<'py>, told: &str, tnew: &str) -> PyResult<Bound<'py, PyDict>> {
        let evo = graphtempo::evolution_graph(&self.inner, &self.set(told)?, &self.set(tnew)?).map_err(err)?;
        let nodes = PyDict::new(py);
        for (id, l) in &evo.node_labels {
            nodes.set_item(id, l.to_string())?;
        }
        let edges = PyDict::new(py);
        for ((a, b), l) in &evo.edge_labels {
            edges.set_item((a, b), l.to_string())?;
        }
        let out = PyDict::new(py);
        out.set_item("nodes", nodes)?;
        out.set_item("edges", edges)?;
        Ok(out)
    }

    /// Interval pairs where the event weight of the target reaches `k`.
    /// `reference` is "old_fixed" or "new_fixed".
    #[pyo3(signature = (event, extremal, reference, k, attrs, node=None, edge=None, pattern=None, mode="dist", brute_force=false))]
    #[allow(clippy::too_many_arguments)]
    fn explore(
        &self,
        py: Python<'_>,
        event: &str,
        extremal: &str,
        reference: &str,
        k: u64,
        attrs: Vec<String>,
        node: Option<&Bound<'_, PyAny>>,
        edge: Option<(Bound<'_, PyAny>, Bound<'_, PyAny>)>,
        pattern: Option<&Bound<'_, PyAny>>,
        mode: &str,
        brute_force: bool,
    ) -> PyResult<PyExplorationResult> {
        let q = ExplorationQuery {
            event: parse(event)?,
            extremal: parse(extremal)?,
            reference: self::reference(reference)?,
            k,
            target: self.target(&attrs, node, edge, pattern, self::mode(mode)?)?,
        };
        let g = &self.inner;
        let res = py.detach(|| if brute_force { graphtempo::brute_force_explore(g, &q) } else { graphtempo::explore(g, &q) });
        Ok(PyExplorationResult { inner: res.map_err(err)?, time: g.time().clone() })
    }

    /// (w_min, w_max, start) over consecutive point pairs.
    #[pyo3(signature = (event, extremal, reference, attrs, node=None, edge=None, pattern=None, mode="dist"))]
    #[allow(clippy::too_many_arguments)]
    fn init_threshold(
        &self,
        event: &str,
        extremal: &str,
        reference: &str,
        attrs: Vec<String>,
        node: Option<&Bound<'_, PyAny>>,
        edge: Option<(Bound<'_, PyAny>, Bound<'_, PyAny>)>,
        pattern: Option<&Bound<'_, PyAny>>,
        mode: &str,
    ) -> PyResult<(u64, u64, u64)> {
        let event: Event = parse(event)?;
        let extremal: Extremal = parse(extremal)?;
        let target = self.target(&attrs, node, edge, pattern, self::mode(mode)?)?;
        let t = graphtempo::init_threshold(&self.inner, event, extremal, self::reference(reference)?, &target).map_err(err)?;
        Ok((t.w_min, t.w_max, t.start))
    }

    fn __repr__(&self) -> String {
        format!(
            "TemporalGraph(nodes={}, edges={}, time={:?}, directed={})",
            self.inner.node_count(),
            self.inner.edge_count(),
            self.inner.time().labels(),
            self.inner.is_directed()
        )
    }
}

#[pyclass(name = "AggregateGraph", module = "graphtempo", frozen)]
struct PyAggregateGraph {
    inner: graphtempo::AggregateGraph,
}

impl From<graphtempo::AggregateGraph> for PyAggregateGraph {
    fn from(inner: graphtempo::AggregateGraph) -> Self {
        PyAggregateGraph { inner }
    }
}

#[pymethods]
impl PyAggregateGraph {
    #[getter]
    fn attrs(&self) -> Vec<String> {
        self.inner.attrs().to_vec()
    }

    #[getter]
    fn mode(&self) -> String {
        self.inner.mode().to_string()
    }

    #[getter]
    fn directed(&self) -> bool {
        self.inner.is_directed()
    }

    /// {key: weight}
    fn nodes<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let out = PyDict::new(py);
        for (k, w) in self.inner.nodes() {
            out.set_item(key_to_py(py, k)?, w)?;
        }
        Ok(out)
    }

    /// {(source key, target key): weight}
    fn edges<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let out = PyDict::new(py);
        for ((a, b), w) in self.inner.edges() {
            out.set_item((key_to_py(py, a)?, key_to_py(py, b)?), w)?;
        }
        Ok(out)
    }

    fn node_weight(&self, key: &Bound<'_, PyAny>) -> PyResult<u64> {
        Ok(self.inner.node_weight(&key_from_py(key)?))
    }

    fn edge_weight(&self, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<u64> {
        Ok(self.inner.edge_weight(&key_from_py(a)?, &key_from_py(b)?))
    }

    /// Keys projected onto `subset` with weights summed.
    fn rollup(&self, subset: Vec<String>) -> PyResult<Self> {
        graphtempo::rollup_attributes(&self.inner, &subset).map(Self::from).map_err(err)
    }

    fn to_json(&self) -> String {
        aggregate_to_json(&self.inner)
    }

    fn to_csv(&self) -> PyResult<String> {
        aggregate_to_csv(&self.inner).map_err(err)
    }

    fn to_dot(&self) -> String {
        aggregate_to_dot(&self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __len__(&self) -> usize {
        self.inner.nodes().len()
    }

    fn __repr__(&self) -> String {
        format!(
            "AggregateGraph(attrs={:?}, mode={}, nodes={}, edges={})",
            self.inner.attrs(),
            self.inner.mode(),
            self.inner.nodes().len(),
            self.inner.edges().len()
        )
    }
}

#[pyclass(name = "AggregateEvolution", module = "graphtempo", frozen)]
struct PyAggregateEvolution {
    inner: graphtempo::AggregateEvolutionGraph,
}

fn triple(t: graphtempo::Triple) -> (u64, u64, u64) {
    (t.stability, t.growth, t.shrinkage)
}

#[pymethods]
impl PyAggregateEvolution {
    /// {key: (stability, growth, shrinkage)}
    fn nodes<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let out = PyDict::new(py);
        for (k, t) in &self.inner.nodes {
            out.set_item(key_to_py(py, k)?, triple(*t))?;
        }
        Ok(out)
    }

    fn edges<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let out = PyDict::new(py);
        for ((a, b), t) in &self.inner.edges {
            out.set_item((key_to_py(py, a)?, key_to_py(py, b)?), triple(*t))?;
        }
        Ok(out)
    }

    fn node(&self, key: &Bound<'_, PyAny>) -> PyResult<(u64, u64, u64)> {
        Ok(triple(self.inner.node(&key_from_py(key)?)))
    }

    fn edge(&self, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<(u64, u64, u64)> {
        Ok(triple(self.inner.edge(&key_from_py(a)?, &key_from_py(b)?)))
    }

    /// The aggregate of one event: "stability", "growth" or "shrinkage".
    fn component(&self, event: &str) -> PyResult<PyAggregateGraph> {
        let e: Event = parse(event)?;
        Ok(self.inner.component(e).clone().into())
    }

    fn to_json(&self) -> String {
        evolution_to_json(&self.inner)
    }

    fn to_csv(&self) -> PyResult<String> {
        evolution_to_csv(&self.inner).map_err(err)
    }

    fn to_dot(&self) -> String {
        evolution_to_dot(&self.inner)
    }
}

#[pyclass(name = "ExplorationResult", module = "graphtempo", frozen)]
struct PyExplorationResult {
    inner: graphtempo::ExplorationResult,
    time: TimeDomain,
}

#[pymethods]
impl PyExplorationResult {
    /// [(reference label, old side, new side, weight)]
    #[getter]
    fn pairs(&self) -> Vec<(String, String, String, u64)> {
        let side = self.inner.query.reference;
        self.inner
            .pairs
            .iter()
            .map(|e| {
                (
                    self.time.label(e.pair.reference).to_string(),
                    self.time.render_interval(&e.pair.old(side)),
                    self.time.render_interval(&e.pair.new_side(side)),
                    e.weight,
                )
            })
            .collect()
    }

    #[getter]
    fn evaluations(&self) -> usize {
        self.inner.evaluations
    }

    /// Point ranges covered by the pairs, keeping only maximal ones.
    fn reduced_spans(&self) -> Vec<String> {
        self.inner.reduced_spans().iter().map(|iv| self.time.render_interval(iv)).collect()
    }

    #[getter]
    fn target(&self) -> String {
        self.inner.query.target.to_string()
    }

    fn to_json(&self) -> String {
        exploration_to_json(&self.inner, &self.time)
    }

    fn heatmap_csv(&self) -> PyResult<String> {
        exploration_heatmap_csv(&self.inner, &self.time).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.inner.pairs.len()
    }
}

/// Per time point ALL aggregates, optionally written through to `dir`.
#[pyclass(name = "AggregateCache", module = "graphtempo", frozen)]
struct PyAggregateCache {
    inner: graphtempo::AggregateCache,
}

#[pymethods]
impl PyAggregateCache {
    #[new]
    #[pyo3(signature = (dir=None))]
    fn new(dir: Option<PathBuf>) -> Self {
        let inner = match dir {
            Some(d) => graphtempo::AggregateCache::with_dir(d),
            None => graphtempo::AggregateCache::from_env(),
        };
        PyAggregateCache { inner }
    }

    fn precompute(&self, graph: &PyTemporalGraph, attrs: Vec<String>) -> PyResult<()> {
        self.inner.precompute(&graph.inner, &attrs).map_err(err)
    }

    /// Union ALL aggregate over `t1` and `t2` from cached points; points
    /// not yet cached are computed and stored.
    fn rollup(&self, graph: &PyTemporalGraph, attrs: Vec<String>, t1: &str, t2: &str) -> PyResult<PyAggregateGraph> {
        let (t1, t2) = (graph.set(t1)?, graph.set(t2)?);
        self.inner.union_all_or_compute(&graph.inner, &t1, &t2, &attrs).map(Into::into).map_err(err)
    }

    #[getter]
    fn hits(&self) -> u64 {
        self.inner.hits()
    }

    #[getter]
    fn misses(&self) -> u64 {
        self.inner.misses()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

/// Key for a triangle from three member value sequences.
#[pyfunction]
fn pattern_key<'py>(py: Python<'py>, members: Vec<Vec<String>>) -> PyResult<Bound<'py, PyTuple>> {
    let refs: Vec<&[String]> = members.iter().map(Vec::as_slice).collect();
    key_to_py(py, &graphtempo::pattern_key(&refs))
}

#[pyfunction]
fn render_key(key: &Bound<'_, PyAny>) -> PyResult<String> {
    Ok(graphtempo::render_key(&key_from_py(key)?))
}

#[pymodule]
#[pyo3(name = "graphtempo")]
fn graphtempo_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTemporalGraph>()?;
    m.add_class::<PyAggregateGraph>()?;
    m.add_class::<PyAggregateEvolution>()?;
    m.add_class::<PyExplorationResult>()?;
    m.add_class::<PyAggregateCache>()?;
    m.add_function(wrap_pyfunction!(pattern_key, m)?)?;
    m.add_function(wrap_pyfunction!(render_key, m)?)?;
    m.add("GraphTempoError", m.py().get_type::<GraphTempoError>())?;
    m.add("EVENTS", PyList::new(m.py(), ["stability", "growth", "shrinkage"])?)?;
    Ok(())
}
