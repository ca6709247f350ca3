//! In-memory temporal attributed graph: presence bit matrices for nodes and
//! edges plus static and time-varying attribute arrays.

mod attrs;
mod fixture;
mod load;
mod presence;
mod time;

use std::collections::HashMap;
use std::sync::Arc;

pub use attrs::{AttrKind, Attribute, AttributeCatalog, Dictionary, MISSING};
pub use fixture::build_fixture_fig1;
pub use load::{export_temporal_graph, load_temporal_graph, LoadOptions};
pub use presence::PresenceMatrix;
pub use time::{Interval, IntervalSet, TimeDomain, TimeMask};

use crate::error::{GraphError, Result};
use crate::value::Value;

pub type NodeId = Arc<str>;

/// Edge row label: dense node indices of the endpoints.
pub type EdgeLabel = (u32, u32);

#[derive(Clone, Debug)]
pub struct TemporalGraph {
    pub(crate) time: Arc<TimeDomain>,
    pub(crate) nodes: PresenceMatrix<NodeId>,
    pub(crate) edges: PresenceMatrix<EdgeLabel>,
    pub(crate) attrs: AttributeCatalog,
    pub(crate) directed: bool,
}

impl TemporalGraph {
    pub fn time(&self) -> &TimeDomain {
        &self.time
    }

    /// Number of time points.
    pub fn n(&self) -> usize {
        self.time.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn nodes(&self) -> &PresenceMatrix<NodeId> {
        &self.nodes
    }

    pub fn edges(&self) -> &PresenceMatrix<EdgeLabel> {
        &self.edges
    }

    pub fn attrs(&self) -> &AttributeCatalog {
        &self.attrs
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.find(&NodeId::from(id))
    }

    pub fn node_id(&self, node: usize) -> &str {
        self.nodes.label(node)
    }

    pub fn edge_endpoints(&self, edge: usize) -> (usize, usize) {
        let (u, v) = *self.edges.label(edge);
        (u as usize, v as usize)
    }

    pub fn edge_ids(&self, edge: usize) -> (&str, &str) {
        let (u, v) = self.edge_endpoints(edge);
        (self.node_id(u), self.node_id(v))
    }

    pub fn find_edge(&self, u: &str, v: &str) -> Option<usize> {
        let (a, b) = (self.node_index(u)? as u32, self.node_index(v)? as u32);
        let label = if self.directed { (a, b) } else { (a.min(b), a.max(b)) };
        self.edges.find(&label)
    }

    /// Ids of the nodes whose bit is set at `t`.
    pub fn nodes_at(&self, t: usize) -> Vec<&str> {
        (0..self.node_count())
            .filter(|&u| self.nodes.get(u, t))
            .map(|u| self.node_id(u))
            .collect()
    }

    pub fn edges_at(&self, t: usize) -> Vec<(&str, &str)> {
        (0..self.edge_count())
            .filter(|&e| self.edges.get(e, t))
            .map(|e| self.edge_ids(e))
            .collect()
    }

    /// `A^i(u, t)`; `Ok(None)` is the MISSING marker.
    pub fn lookup_attribute(&self, node: &str, attr: &str, t: usize) -> Result<Option<Value>> {
        let u = self
            .node_index(node)
            .ok_or_else(|| GraphError::Lookup(format!("unknown node {node:?}")))?;
        let a = self
            .attrs
            .get(attr)
            .ok_or_else(|| GraphError::Lookup(format!("unknown attribute {attr:?}")))?;
        if t >= self.n() {
            return Err(GraphError::Lookup(format!("time index {t} out of range")));
        }
        Ok(a.dict.get(a.code(u, t, self.n())).cloned())
    }

    /// Checks the structural invariants of the graph.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        for e in 0..self.edge_count() {
            let (u, v) = self.edge_endpoints(e);
            if u >= self.node_count() || v >= self.node_count() {
                return Err(GraphError::Consistency(format!("edge {e} references a missing node")));
            }
            for t in self.edges.times(e) {
                if !self.nodes.get(u, t) || !self.nodes.get(v, t) {
                    let (a, b) = self.edge_ids(e);
                    return Err(GraphError::Consistency(format!(
                        "edge ({a},{b}) exists at {} but an endpoint does not",
                        self.time.label(t)
                    )));
                }
            }
        }
        for attr in self.attrs.iter().filter(|a| !a.is_static()) {
            for u in 0..self.node_count() {
                for t in 0..n {
                    if attr.codes[u * n + t] != MISSING && !self.nodes.get(u, t) {
                        return Err(GraphError::Consistency(format!(
                            "attribute {} has a value for absent node {} at {}",
                            attr.name,
                            self.node_id(u),
                            self.time.label(t)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Copy of the graph holding only the selected rows, with every bit
    /// outside `retain` cleared. Kept edges must have kept endpoints.
    pub(crate) fn restrict(&self, keep_nodes: &[bool], keep_edges: &[bool], retain: &TimeMask) -> TemporalGraph {
        let n = self.n();
        let mut remap = vec![u32::MAX; self.node_count()];
        let mut nodes = PresenceMatrix::new(n);
        let mut row = vec![0u64; retain.words().len()];
        let mut kept = Vec::new();
        for u in (0..self.node_count()).filter(|&u| keep_nodes[u]) {
            for (dst, (a, b)) in row.iter_mut().zip(self.nodes.row(u).iter().zip(retain.words())) {
                *dst = a & b;
            }
            remap[u] = nodes.push_row(self.nodes.label(u).clone(), &row) as u32;
            kept.push(u);
        }
        let mut edges = PresenceMatrix::new(n);
        for e in (0..self.edge_count()).filter(|&e| keep_edges[e]) {
            let (u, v) = *self.edges.label(e);
            let label = (remap[u as usize], remap[v as usize]);
            debug_assert!(label.0 != u32::MAX && label.1 != u32::MAX, "edge endpoint dropped");
            for (dst, (a, b)) in row.iter_mut().zip(self.edges.row(e).iter().zip(retain.words())) {
                *dst = a & b;
            }
            edges.push_row(label, &row);
        }
        let attrs = AttributeCatalog {
            attrs: self
                .attrs
                .iter()
                .map(|a| {
                    let codes = match a.kind {
                        AttrKind::Static => kept.iter().map(|&u| a.codes[u]).collect(),
                        AttrKind::Varying => {
                            let mut codes = Vec::with_capacity(kept.len() * n);
                            for (new_u, &u) in kept.iter().enumerate() {
                                for t in 0..n {
                                    codes.push(if nodes.get(new_u, t) { a.codes[u * n + t] } else { MISSING });
                                }
                            }
                            codes
                        }
                    };
                    Attribute { name: a.name.clone(), kind: a.kind, codes, dict: Arc::clone(&a.dict) }
                })
                .collect(),
        };
        TemporalGraph { time: Arc::clone(&self.time), nodes, edges, attrs, directed: self.directed }
    }

    /// Re-indexes the time axis. Each output column is either an original
    /// point or the meet of an interval: an entity exists at a meet column iff
    /// it exists at every point of the interval, and a varying value survives
    /// iff it is the same at every point.
    pub(crate) fn with_columns(&self, columns: &[Column]) -> TemporalGraph {
        let n = self.n();
        let m = columns.len();
        let labels: Vec<String> = columns
            .iter()
            .map(|c| match c {
                Column::Point(t) => self.time.label(*t).to_string(),
                Column::Meet(iv) => format!("{}&{}", self.time.label(iv.start), self.time.label(iv.end)),
            })
            .collect();
        let time = Arc::new(TimeDomain::new(labels).expect("column labels are distinct"));
        let masks: Vec<TimeMask> = columns
            .iter()
            .map(|c| match c {
                Column::Point(t) => IntervalSet::point(*t).mask(n),
                Column::Meet(iv) => IntervalSet::from(*iv).mask(n),
            })
            .collect();
        let nodes = meet_rows(&self.nodes, &masks);
        let edges = meet_rows(&self.edges, &masks);
        let attrs = AttributeCatalog {
            attrs: self
                .attrs
                .iter()
                .map(|a| {
                    let codes = match a.kind {
                        AttrKind::Static => a.codes.clone(),
                        AttrKind::Varying => {
                            let mut codes = Vec::with_capacity(self.node_count() * m);
                            for u in 0..self.node_count() {
                                for (c, col) in columns.iter().enumerate() {
                                    let code = if !nodes.get(u, c) {
                                        MISSING
                                    } else {
                                        match col {
                                            Column::Point(t) => a.codes[u * n + t],
                                            Column::Meet(iv) => {
                                                let first = a.codes[u * n + iv.start];
                                                if iv.points().all(|t| a.codes[u * n + t] == first) {
                                                    first
                                                } else {
                                                    MISSING
                                                }
                                            }
                                        }
                                    };
                                    codes.push(code);
                                }
                            }
                            codes
                        }
                    };
                    Attribute { name: a.name.clone(), kind: a.kind, codes, dict: Arc::clone(&a.dict) }
                })
                .collect(),
        };
        TemporalGraph { time, nodes, edges, attrs, directed: self.directed }
    }
}

fn meet_rows<L: Clone + Eq + std::hash::Hash>(src: &PresenceMatrix<L>, masks: &[TimeMask]) -> PresenceMatrix<L> {
    let mut dst = PresenceMatrix::new(masks.len());
    for row in 0..src.len() {
        let r = dst.ensure_row(src.label(row).clone());
        for (c, mask) in masks.iter().enumerate() {
            if src.all_in(row, mask) {
                dst.set(r, c);
            }
        }
    }
    dst
}

/// Output column for [`TemporalGraph::with_columns`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Column {
    Point(usize),
    Meet(Interval),
}

#[derive(Debug, Default)]
struct PendingAttr {
    name: String,
    kind: Option<AttrKind>,
    statics: HashMap<usize, Value>,
    varying: HashMap<(usize, usize), Value>,
}

/// Incremental construction of a [`TemporalGraph`].
#[derive(Debug)]
pub struct GraphBuilder {
    time: TimeDomain,
    directed: bool,
    nodes: PresenceMatrix<NodeId>,
    edges: PresenceMatrix<EdgeLabel>,
    attrs: Vec<PendingAttr>,
}

impl GraphBuilder {
    pub fn new(time: TimeDomain, directed: bool) -> Self {
        let n = time.len();
        GraphBuilder {
            time,
            directed,
            nodes: PresenceMatrix::new(n),
            edges: PresenceMatrix::new(n),
            attrs: Vec::new(),
        }
    }

    pub fn time(&self) -> &TimeDomain {
        &self.time
    }

    pub fn node(&mut self, id: &str) -> usize {
        self.nodes.ensure_row(NodeId::from(id))
    }

    pub fn has_node(&self, id: &str) -> bool {
        self.nodes.find(&NodeId::from(id)).is_some()
    }

    pub fn set_node_present(&mut self, id: &str, t: usize) {
        let u = self.node(id);
        self.nodes.set(u, t);
    }

    /// Adds an occurrence of edge `(u, v)` at `t`, canonicalized when undirected.
    pub fn edge(&mut self, u: &str, v: &str, t: usize) {
        let a = self.node(u) as u32;
        let b = self.node(v) as u32;
        let label = if self.directed { (a, b) } else { (a.min(b), a.max(b)) };
        let e = self.edges.ensure_row(label);
        self.edges.set(e, t);
    }

    fn attr_mut(&mut self, name: &str, kind: AttrKind) -> Result<&mut PendingAttr> {
        let pos = match self.attrs.iter().position(|a| a.name == name) {
            Some(p) => p,
            None => {
                self.attrs.push(PendingAttr { name: name.to_string(), ..Default::default() });
                self.attrs.len() - 1
            }
        };
        let attr = &mut self.attrs[pos];
        match attr.kind {
            Some(k) if k != kind => {
                return Err(GraphError::Consistency(format!(
                    "attribute {name:?} declared both static and time-varying"
                )))
            }
            _ => attr.kind = Some(kind),
        }
        Ok(attr)
    }

    pub fn declare_attr(&mut self, name: &str, kind: AttrKind) -> Result<()> {
        self.attr_mut(name, kind).map(|_| ())
    }

    pub fn set_static(&mut self, attr: &str, id: &str, value: Option<Value>) -> Result<()> {
        let u = self.node(id);
        let a = self.attr_mut(attr, AttrKind::Static)?;
        match value {
            Some(v) => a.statics.insert(u, v),
            None => a.statics.remove(&u),
        };
        Ok(())
    }

    pub fn set_varying(&mut self, attr: &str, id: &str, t: usize, value: Option<Value>) -> Result<()> {
        let u = self.node(id);
        let a = self.attr_mut(attr, AttrKind::Varying)?;
        match value {
            Some(v) => a.varying.insert((u, t), v),
            None => a.varying.remove(&(u, t)),
        };
        Ok(())
    }

    /// Finishes the graph. With `infer_presence`, a node exists at `t` iff it
    /// is incident to an edge at `t`; otherwise node bits are taken as given.
    pub fn build(mut self, infer_presence: bool) -> Result<TemporalGraph> {
        let n = self.time.len();
        if infer_presence {
            for e in 0..self.edges.len() {
                let (u, v) = *self.edges.label(e);
                let times: Vec<usize> = self.edges.times(e).collect();
                for t in times {
                    self.nodes.set(u as usize, t);
                    self.nodes.set(v as usize, t);
                }
            }
        }
        let count = self.nodes.len();
        let attrs = self
            .attrs
            .into_iter()
            .map(|p| {
                let mut dict = Dictionary::default();
                let kind = p.kind.unwrap_or(AttrKind::Static);
                let codes = match kind {
                    AttrKind::Static => {
                        let mut codes = vec![MISSING; count];
                        let mut entries: Vec<_> = p.statics.into_iter().collect();
                        entries.sort_by_key(|(u, _)| *u);
                        for (u, v) in entries {
                            codes[u] = dict.intern(v);
                        }
                        codes
                    }
                    AttrKind::Varying => {
                        let mut codes = vec![MISSING; count * n];
                        let mut entries: Vec<_> = p.varying.into_iter().collect();
                        entries.sort_by_key(|((u, t), _)| (*u, *t));
                        for ((u, t), v) in entries {
                            codes[u * n + t] = dict.intern(v);
                        }
                        codes
                    }
                };
                Attribute { name: p.name, kind, codes, dict: Arc::new(dict) }
            })
            .collect();
        let g = TemporalGraph {
            time: Arc::new(self.time),
            nodes: self.nodes,
            edges: self.edges,
            attrs: AttributeCatalog { attrs },
            directed: self.directed,
        };
        g.validate()?;
        Ok(g)
    }
}
