//! Project, union, intersection and difference over time intervals.
//!
//! Results keep the full time domain of the input; bits outside the retained
//! points are cleared. Empty results are ordinary graphs with zero rows.

use crate::error::Result;
use crate::graph_store::{Interval, IntervalSet, TemporalGraph, TimeMask};

/// Entities whose timestamp covers all of `t1`, restricted to `t1`.
pub fn project(g: &TemporalGraph, t1: Interval) -> Result<TemporalGraph> {
    g.time().check(&t1)?;
    let mask = IntervalSet::from(t1).mask(g.n());
    let keep_nodes: Vec<bool> = (0..g.node_count()).map(|u| g.nodes().all_in(u, &mask)).collect();
    let keep_edges: Vec<bool> = (0..g.edge_count()).map(|e| g.edges().all_in(e, &mask)).collect();
    Ok(g.restrict(&keep_nodes, &keep_edges, &mask))
}

pub fn union(g: &TemporalGraph, t1: &IntervalSet, t2: &IntervalSet) -> Result<TemporalGraph> {
    let (m1, m2) = masks(g, t1, t2)?;
    Ok(union_masks(g, &m1, &m2))
}

pub fn intersection(g: &TemporalGraph, t1: &IntervalSet, t2: &IntervalSet) -> Result<TemporalGraph> {
    let (m1, m2) = masks(g, t1, t2)?;
    Ok(intersection_masks(g, &m1, &m2))
}

pub fn difference(g: &TemporalGraph, t1: &IntervalSet, t2: &IntervalSet) -> Result<TemporalGraph> {
    let (m1, m2) = masks(g, t1, t2)?;
    Ok(difference_masks(g, &m1, &m2))
}

/// The three binary operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SetOp {
    Union,
    Intersection,
    Difference,
}

impl SetOp {
    pub fn apply(self, g: &TemporalGraph, t1: &IntervalSet, t2: &IntervalSet) -> Result<TemporalGraph> {
        match self {
            SetOp::Union => union(g, t1, t2),
            SetOp::Intersection => intersection(g, t1, t2),
            SetOp::Difference => difference(g, t1, t2),
        }
    }
}

impl std::str::FromStr for SetOp {
    type Err = crate::error::GraphError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "union" => Ok(SetOp::Union),
            "intersection" => Ok(SetOp::Intersection),
            "difference" => Ok(SetOp::Difference),
            _ => Err(crate::error::GraphError::Usage(format!("unknown operator {s:?}"))),
        }
    }
}

fn masks(g: &TemporalGraph, t1: &IntervalSet, t2: &IntervalSet) -> Result<(TimeMask, TimeMask)> {
    g.time().check_set(t1)?;
    g.time().check_set(t2)?;
    Ok((t1.mask(g.n()), t2.mask(g.n())))
}

/// Timestamps kept by the intersection operator: `τ ∩ (T1 ∪ T2)`.
pub fn intersection_retention(t1: &TimeMask, t2: &TimeMask) -> TimeMask {
    t1.union(t2)
}

pub(crate) fn union_masks(g: &TemporalGraph, m1: &TimeMask, m2: &TimeMask) -> TemporalGraph {
    let both = m1.union(m2);
    let keep_nodes: Vec<bool> = (0..g.node_count()).map(|u| g.nodes().any_in(u, &both)).collect();
    let keep_edges: Vec<bool> = (0..g.edge_count()).map(|e| g.edges().any_in(e, &both)).collect();
    g.restrict(&keep_nodes, &keep_edges, &both)
}

pub(crate) fn intersection_masks(g: &TemporalGraph, m1: &TimeMask, m2: &TimeMask) -> TemporalGraph {
    let keep_nodes: Vec<bool> = (0..g.node_count())
        .map(|u| g.nodes().any_in(u, m1) && g.nodes().any_in(u, m2))
        .collect();
    let keep_edges: Vec<bool> = (0..g.edge_count())
        .map(|e| g.edges().any_in(e, m1) && g.edges().any_in(e, m2))
        .collect();
    g.restrict(&keep_nodes, &keep_edges, &intersection_retention(m1, m2))
}

pub(crate) fn difference_masks(g: &TemporalGraph, m1: &TimeMask, m2: &TimeMask) -> TemporalGraph {
    let keep_edges: Vec<bool> = (0..g.edge_count())
        .map(|e| g.edges().any_in(e, m1) && !g.edges().any_in(e, m2))
        .collect();
    let mut endpoint = vec![false; g.node_count()];
    for e in (0..g.edge_count()).filter(|&e| keep_edges[e]) {
        let (u, v) = g.edge_endpoints(e);
        endpoint[u] = true;
        endpoint[v] = true;
    }
    let keep_nodes: Vec<bool> = (0..g.node_count())
        .map(|u| g.nodes().any_in(u, m1) && (!g.nodes().any_in(u, m2) || endpoint[u]))
        .collect();
    g.restrict(&keep_nodes, &keep_edges, m1)
}
