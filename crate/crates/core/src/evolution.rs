//! Evolution between two interval sets: stability, growth and shrinkage.
//!
//! Event weights count entities that take part in the event. A stable
//! appearance counts under a key only if the entity carries that key on both
//! sides. Growth node weights count nodes that are new on the new side;
//! nodes kept in the difference graph only as endpoints of new edges are
//! carried over and do not count. Shrinkage mirrors growth.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::attribute_agg::{aggregate_core, resolve, AggMode, AggregateGraph, KeyMap, Scope};
use crate::error::{GraphError, Result};
use crate::graph_store::{IntervalSet, TemporalGraph, TimeMask};
use crate::pattern_agg::{build_tri_graph, member_key, Pattern};
use crate::temporal_ops::{difference, intersection};
use crate::value::{Key, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Event {
    Stability,
    Growth,
    Shrinkage,
}

impl Event {
    pub const ALL: [Event; 3] = [Event::Stability, Event::Growth, Event::Shrinkage];

    pub fn label(self) -> char {
        match self {
            Event::Stability => 'S',
            Event::Growth => 'G',
            Event::Shrinkage => 'R',
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Event::Stability => "stability",
            Event::Growth => "growth",
            Event::Shrinkage => "shrinkage",
        })
    }
}

impl std::str::FromStr for Event {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "stability" | "s" => Ok(Event::Stability),
            "growth" | "g" => Ok(Event::Growth),
            "shrinkage" | "r" => Ok(Event::Shrinkage),
            _ => Err(GraphError::Usage(format!("unknown event {s:?}"))),
        }
    }
}

/// Subset of {S, G, R}.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Labels {
    pub stable: bool,
    pub grow: bool,
    pub shrink: bool,
}

impl fmt::Display for Labels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (on, c) in [(self.stable, 'S'), (self.grow, 'G'), (self.shrink, 'R')] {
            if on {
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

/// The three component graphs and the overlay labels of their elements.
#[derive(Clone, Debug)]
pub struct EvolutionGraph {
    pub stable: TemporalGraph,
    pub shrink: TemporalGraph,
    pub grow: TemporalGraph,
    pub node_labels: BTreeMap<String, Labels>,
    pub edge_labels: BTreeMap<(String, String), Labels>,
}

pub fn evolution_graph(g: &TemporalGraph, told: &IntervalSet, tnew: &IntervalSet) -> Result<EvolutionGraph> {
    let stable = intersection(g, told, tnew)?;
    let shrink = difference(g, told, tnew)?;
    let grow = difference(g, tnew, told)?;
    let mut node_labels: BTreeMap<String, Labels> = BTreeMap::new();
    let mut edge_labels: BTreeMap<(String, String), Labels> = BTreeMap::new();
    for (part, set) in [(&stable, 0), (&grow, 1), (&shrink, 2)] {
        let mark = |l: &mut Labels| match set {
            0 => l.stable = true,
            1 => l.grow = true,
            _ => l.shrink = true,
        };
        for u in 0..part.node_count() {
            mark(node_labels.entry(part.node_id(u).to_string()).or_default());
        }
        for e in 0..part.edge_count() {
            let (a, b) = part.edge_ids(e);
            mark(edge_labels.entry((a.to_string(), b.to_string())).or_default());
        }
    }
    Ok(EvolutionGraph { stable, shrink, grow, node_labels, edge_labels })
}

/// Weights of one event between the points of `old` and `new`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn event_aggregate_masks(
    g: &TemporalGraph,
    event: Event,
    old: &TimeMask,
    new: &TimeMask,
    cols: &[usize],
    names: Vec<String>,
    mode: AggMode,
    key_map: Option<KeyMap<'_>>,
) -> AggregateGraph {
    let (from, to) = match event {
        Event::Stability => {
            let scope = Scope { persist: Some((old, new)), key_map, ..Scope::default() };
            return aggregate_core(g, &old.union(new), cols, names, mode, scope);
        }
        Event::Growth => (old, new),
        Event::Shrinkage => (new, old),
    };
    // Entities on the `to` side that do not exist on the `from` side.
    let nodes: Vec<bool> = (0..g.node_count())
        .map(|u| g.nodes().any_in(u, to) && !g.nodes().any_in(u, from))
        .collect();
    let edges: Vec<bool> = (0..g.edge_count())
        .map(|e| g.edges().any_in(e, to) && !g.edges().any_in(e, from))
        .collect();
    let scope = Scope { node_filter: Some(&nodes), edge_filter: Some(&edges), key_map, ..Scope::default() };
    aggregate_core(g, to, cols, names, mode, scope)
}

fn check(g: &TemporalGraph, told: &IntervalSet, tnew: &IntervalSet) -> Result<(TimeMask, TimeMask)> {
    for t in [told, tnew] {
        if t.is_empty() {
            return Err(GraphError::Interval("event interval is empty".into()));
        }
        g.time().check_set(t)?;
    }
    Ok((told.mask(g.n()), tnew.mask(g.n())))
}

/// Aggregate graph of one event from `told` to `tnew`. With a pattern, the
/// tri-graph is built on `g` first and the event is taken on it.
pub fn event_aggregate<S: AsRef<str>>(
    g: &TemporalGraph,
    event: Event,
    told: &IntervalSet,
    tnew: &IntervalSet,
    attrs: &[S],
    mode: AggMode,
    pattern: Option<Pattern>,
) -> Result<AggregateGraph> {
    let (old, new) = check(g, told, tnew)?;
    let names: Vec<String> = attrs.iter().map(|a| a.as_ref().to_string()).collect();
    let cols = resolve(g, attrs)?;
    match pattern {
        None => Ok(event_aggregate_masks(g, event, &old, &new, &cols, names, mode, None)),
        Some(Pattern::Triangle) => {
            let tri = build_tri_graph(g, &told.union(tnew))?;
            Ok(event_aggregate_masks(&tri, event, &old, &new, &cols, names, mode, Some(&member_key)))
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Triple {
    #[serde(rename = "S")]
    pub stability: u64,
    #[serde(rename = "G")]
    pub growth: u64,
    #[serde(rename = "R")]
    pub shrinkage: u64,
}

impl Triple {
    pub fn new(stability: u64, growth: u64, shrinkage: u64) -> Self {
        Triple { stability, growth, shrinkage }
    }

    pub fn total(&self) -> u64 {
        self.stability + self.growth + self.shrinkage
    }

    pub fn get(&self, e: Event) -> u64 {
        match e {
            Event::Stability => self.stability,
            Event::Growth => self.growth,
            Event::Shrinkage => self.shrinkage,
        }
    }

    fn slot(&mut self, e: Event) -> &mut u64 {
        match e {
            Event::Stability => &mut self.stability,
            Event::Growth => &mut self.growth,
            Event::Shrinkage => &mut self.shrinkage,
        }
    }
}

/// The three event aggregates overlaid by key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AggregateEvolutionGraph {
    pub attrs: Vec<String>,
    pub mode: AggMode,
    pub stability: AggregateGraph,
    pub growth: AggregateGraph,
    pub shrinkage: AggregateGraph,
    pub nodes: BTreeMap<Key, Triple>,
    pub edges: BTreeMap<(Key, Key), Triple>,
}

impl AggregateEvolutionGraph {
    fn join(attrs: Vec<String>, mode: AggMode, s: AggregateGraph, gr: AggregateGraph, r: AggregateGraph) -> Self {
        let mut nodes: BTreeMap<Key, Triple> = BTreeMap::new();
        let mut edges: BTreeMap<(Key, Key), Triple> = BTreeMap::new();
        for (event, part) in [(Event::Stability, &s), (Event::Growth, &gr), (Event::Shrinkage, &r)] {
            for (k, &w) in part.nodes() {
                *nodes.entry(k.clone()).or_default().slot(event) = w;
            }
            for (k, &w) in part.edges() {
                *edges.entry(k.clone()).or_default().slot(event) = w;
            }
        }
        AggregateEvolutionGraph { attrs, mode, stability: s, growth: gr, shrinkage: r, nodes, edges }
    }

    pub fn component(&self, e: Event) -> &AggregateGraph {
        match e {
            Event::Stability => &self.stability,
            Event::Growth => &self.growth,
            Event::Shrinkage => &self.shrinkage,
        }
    }

    pub fn node(&self, key: &[Value]) -> Triple {
        self.nodes.get(key).copied().unwrap_or_default()
    }

    pub fn edge(&self, a: &[Value], b: &[Value]) -> Triple {
        let pair = self.stability.edge_key(a.to_vec(), b.to_vec());
        self.edges.get(&pair).copied().unwrap_or_default()
    }

    pub fn node_keys(&self) -> BTreeSet<&Key> {
        self.nodes.keys().collect()
    }
}

pub fn aggregate_evolution<S: AsRef<str>>(
    g: &TemporalGraph,
    told: &IntervalSet,
    tnew: &IntervalSet,
    attrs: &[S],
    mode: AggMode,
    pattern: Option<Pattern>,
) -> Result<AggregateEvolutionGraph> {
    let (old, new) = check(g, told, tnew)?;
    let names: Vec<String> = attrs.iter().map(|a| a.as_ref().to_string()).collect();
    let cols = resolve(g, attrs)?;
    let tri;
    let (base, key_map): (&TemporalGraph, Option<KeyMap<'_>>) = match pattern {
        None => (g, None),
        Some(Pattern::Triangle) => {
            tri = build_tri_graph(g, &told.union(tnew))?;
            (&tri, Some(&member_key))
        }
    };
    let run = |e| event_aggregate_masks(base, e, &old, &new, &cols, names.clone(), mode, key_map);
    Ok(AggregateEvolutionGraph::join(
        names.clone(),
        mode,
        run(Event::Stability),
        run(Event::Growth),
        run(Event::Shrinkage),
    ))
}
