//! Seeded random graphs for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph_store::{AttrKind, GraphBuilder, TemporalGraph, TimeDomain};
use crate::value::Value;

pub const STATIC_ATTR: &str = "gender";
pub const GROUP_ATTR: &str = "group";
pub const VARYING_ATTR: &str = "level";
const STATIC_VALUES: [&str; 2] = ["f", "m"];
const GROUP_VALUES: [&str; 2] = ["a", "b"];
const VARYING_VALUES: [&str; 3] = ["1", "2", "3"];

#[derive(Clone, Debug)]
pub struct RandomSpec {
    pub nodes: usize,
    pub points: usize,
    /// Probability that a node pair is connected at a time point.
    pub edge_density: f64,
    /// Probability that a node is present at a point without any edge.
    pub isolated: f64,
    /// Probability that an attribute value is missing.
    pub missing: f64,
    pub directed: bool,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec { nodes: 8, points: 4, edge_density: 0.3, isolated: 0.1, missing: 0.1, directed: false }
    }
}

fn labels(points: usize) -> TimeDomain {
    TimeDomain::new((0..points).map(|t| format!("t{t}"))).expect("distinct labels")
}

/// Random graph with static attributes `gender` and `group` and a varying
/// attribute `level`.
pub fn random_graph(spec: &RandomSpec, seed: u64) -> TemporalGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::new(labels(spec.points), spec.directed);
    b.declare_attr(STATIC_ATTR, AttrKind::Static).expect("fresh");
    b.declare_attr(VARYING_ATTR, AttrKind::Varying).expect("fresh");
    let ids: Vec<String> = (0..spec.nodes).map(|i| format!("v{i}")).collect();
    for id in &ids {
        b.node(id);
    }
    for (i, u) in ids.iter().enumerate() {
        for (j, v) in ids.iter().enumerate() {
            if i == j || (!spec.directed && j < i) {
                continue;
            }
            for t in 0..spec.points {
                if rng.gen_bool(spec.edge_density) {
                    b.edge(u, v, t);
                }
            }
        }
    }
    for id in &ids {
        for t in 0..spec.points {
            if rng.gen_bool(spec.isolated) {
                b.set_node_present(id, t);
            }
        }
    }
    // Presence is settled first so varying values only land on present nodes.
    let g = b.build(true).expect("consistent");
    let mut b = GraphBuilder::new(labels(spec.points), spec.directed);
    b.declare_attr(STATIC_ATTR, AttrKind::Static).expect("fresh");
    b.declare_attr(GROUP_ATTR, AttrKind::Static).expect("fresh");
    b.declare_attr(VARYING_ATTR, AttrKind::Varying).expect("fresh");
    for u in 0..g.node_count() {
        let id = g.node_id(u);
        b.node(id);
        for t in g.nodes().times(u) {
            b.set_node_present(id, t);
        }
        if !rng.gen_bool(spec.missing) {
            let v = STATIC_VALUES[rng.gen_range(0..STATIC_VALUES.len())];
            b.set_static(STATIC_ATTR, id, Some(Value::atom(v))).expect("static");
        }
        if !rng.gen_bool(spec.missing) {
            let v = GROUP_VALUES[rng.gen_range(0..GROUP_VALUES.len())];
            b.set_static(GROUP_ATTR, id, Some(Value::atom(v))).expect("static");
        }
        for t in g.nodes().times(u) {
            if !rng.gen_bool(spec.missing) {
                let v = VARYING_VALUES[rng.gen_range(0..VARYING_VALUES.len())];
                b.set_varying(VARYING_ATTR, id, t, Some(Value::atom(v))).expect("varying");
            }
        }
    }
    for e in 0..g.edge_count() {
        let (u, v) = g.edge_ids(e);
        for t in g.edges().times(e) {
            b.edge(u, v, t);
        }
    }
    b.build(false).expect("consistent")
}

/// Larger graph for timing: `edges` distinct node pairs, each present at
/// every point with probability one half (and at least once).
pub fn synthetic_graph(nodes: usize, edges: usize, points: usize, seed: u64) -> TemporalGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::new(labels(points), false);
    b.declare_attr(STATIC_ATTR, AttrKind::Static).expect("fresh");
    b.declare_attr(VARYING_ATTR, AttrKind::Varying).expect("fresh");
    let ids: Vec<String> = (0..nodes).map(|i| format!("v{i}")).collect();
    let mut seen = std::collections::HashSet::new();
    let max_pairs = nodes * nodes.saturating_sub(1) / 2;
    while seen.len() < edges.min(max_pairs) {
        let (a, c) = (rng.gen_range(0..nodes), rng.gen_range(0..nodes));
        if a == c || !seen.insert((a.min(c), a.max(c))) {
            continue;
        }
        let mut any = false;
        for t in 0..points {
            if rng.gen_bool(0.5) {
                b.edge(&ids[a], &ids[c], t);
                any = true;
            }
        }
        if !any {
            b.edge(&ids[a], &ids[c], rng.gen_range(0..points));
        }
    }
    let g = b.build(true).expect("consistent");
    let mut b = GraphBuilder::new(labels(points), false);
    b.declare_attr(STATIC_ATTR, AttrKind::Static).expect("fresh");
    b.declare_attr(VARYING_ATTR, AttrKind::Varying).expect("fresh");
    for u in 0..g.node_count() {
        let id = g.node_id(u);
        let v = STATIC_VALUES[rng.gen_range(0..STATIC_VALUES.len())];
        b.set_static(STATIC_ATTR, id, Some(Value::atom(v))).expect("static");
        for t in g.nodes().times(u) {
            b.set_node_present(id, t);
            let v = VARYING_VALUES[rng.gen_range(0..VARYING_VALUES.len())];
            b.set_varying(VARYING_ATTR, id, t, Some(Value::atom(v))).expect("varying");
        }
    }
    for e in 0..g.edge_count() {
        let (u, v) = g.edge_ids(e);
        for t in g.edges().times(e) {
            b.edge(u, v, t);
        }
    }
    b.build(false).expect("consistent")
}
