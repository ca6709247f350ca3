//! Brute-force reference computations over plain sets, used by the
//! integration and acceptance tests. Nothing here calls into the library's
//! operators or aggregation code; graphs are read through accessors only.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use graphtempo::synth::{random_graph, RandomSpec};
use graphtempo::{AggregateGraph, Interval, IntervalSet, TemporalGraph, Value};

pub type Key = Vec<String>;
pub type NodeWeights = BTreeMap<Key, u64>;
pub type EdgeWeights = BTreeMap<(Key, Key), u64>;
pub type Edge = (String, String);

/// A temporal graph as plain sets.
#[derive(Clone, Debug)]
pub struct Plain {
    pub n: usize,
    pub directed: bool,
    pub nodes: BTreeMap<String, BTreeSet<usize>>,
    pub edges: BTreeMap<Edge, BTreeSet<usize>>,
    /// attr -> node -> point -> value, only at present points.
    pub values: BTreeMap<String, BTreeMap<String, BTreeMap<usize, String>>>,
}

impl Plain {
    pub fn of(g: &TemporalGraph) -> Plain {
        let n = g.n();
        let mut nodes = BTreeMap::new();
        for u in 0..g.node_count() {
            let times: BTreeSet<usize> = (0..n).filter(|&t| g.nodes().get(u, t)).collect();
            nodes.insert(g.node_id(u).to_string(), times);
        }
        let mut edges = BTreeMap::new();
        for e in 0..g.edge_count() {
            let (a, b) = g.edge_ids(e);
            let times: BTreeSet<usize> = (0..n).filter(|&t| g.edges().get(e, t)).collect();
            edges.insert((a.to_string(), b.to_string()), times);
        }
        let mut values = BTreeMap::new();
        for name in g.attrs().names() {
            let mut per_node = BTreeMap::new();
            for (id, times) in &nodes {
                let mut row = BTreeMap::new();
                for &t in times {
                    if let Some(Value::Atom(v)) = g.lookup_attribute(id, name, t).unwrap() {
                        row.insert(t, v.to_string());
                    }
                }
                per_node.insert(id.clone(), row);
            }
            values.insert(name.to_string(), per_node);
        }
        Plain { n, directed: g.is_directed(), nodes, edges, values }
    }

    /// Key of a node at a point; `None` when any attribute is missing.
    pub fn key(&self, node: &str, t: usize, attrs: &[&str]) -> Option<Key> {
        attrs.iter().map(|a| self.values[*a][node].get(&t).cloned()).collect()
    }

    fn edge_key(&self, (u, v): &Edge, t: usize, attrs: &[&str]) -> Option<(Key, Key)> {
        let (a, b) = (self.key(u, t, attrs)?, self.key(v, t, attrs)?);
        Some(if !self.directed && b < a { (b, a) } else { (a, b) })
    }
}

pub fn any(times: &BTreeSet<usize>, set: &BTreeSet<usize>) -> bool {
    times.iter().any(|t| set.contains(t))
}

pub fn all(times: &BTreeSet<usize>, set: &BTreeSet<usize>) -> bool {
    !set.is_empty() && set.iter().all(|t| times.contains(t))
}

pub fn points(set: &IntervalSet) -> BTreeSet<usize> {
    set.points().collect()
}

pub fn interval_points(iv: Interval) -> BTreeSet<usize> {
    iv.points().collect()
}

pub type Entities = (BTreeSet<String>, BTreeSet<Edge>);

/// Node and edge rows of a graph.
pub fn entities(g: &TemporalGraph) -> Entities {
    let p = Plain::of(g);
    (p.nodes.keys().cloned().collect(), p.edges.keys().cloned().collect())
}

pub fn project(p: &Plain, t1: &BTreeSet<usize>) -> Entities {
    let nodes = p.nodes.iter().filter(|(_, s)| all(s, t1)).map(|(u, _)| u.clone()).collect();
    let edges = p.edges.iter().filter(|(_, s)| all(s, t1)).map(|(e, _)| e.clone()).collect();
    (nodes, edges)
}

pub fn union(p: &Plain, t1: &BTreeSet<usize>, t2: &BTreeSet<usize>) -> Entities {
    let both: BTreeSet<usize> = t1.union(t2).copied().collect();
    let nodes = p.nodes.iter().filter(|(_, s)| any(s, &both)).map(|(u, _)| u.clone()).collect();
    let edges = p.edges.iter().filter(|(_, s)| any(s, &both)).map(|(e, _)| e.clone()).collect();
    (nodes, edges)
}

pub fn intersection(p: &Plain, t1: &BTreeSet<usize>, t2: &BTreeSet<usize>) -> Entities {
    let nodes = p.nodes.iter().filter(|(_, s)| any(s, t1) && any(s, t2)).map(|(u, _)| u.clone()).collect();
    let edges = p.edges.iter().filter(|(_, s)| any(s, t1) && any(s, t2)).map(|(e, _)| e.clone()).collect();
    (nodes, edges)
}

pub fn difference(p: &Plain, t1: &BTreeSet<usize>, t2: &BTreeSet<usize>) -> Entities {
    let edges: BTreeSet<Edge> =
        p.edges.iter().filter(|(_, s)| any(s, t1) && !any(s, t2)).map(|(e, _)| e.clone()).collect();
    let nodes = p
        .nodes
        .iter()
        .filter(|(u, s)| any(s, t1) && (!any(s, t2) || edges.iter().any(|(a, b)| a == *u || b == *u)))
        .map(|(u, _)| u.clone())
        .collect();
    (nodes, edges)
}

/// Aggregate weights over the points of `t`: ALL counts appearances, DIST
/// counts distinct entities per key.
pub fn aggregate(p: &Plain, t: &BTreeSet<usize>, attrs: &[&str], distinct: bool) -> (NodeWeights, EdgeWeights) {
    let mut nodes = NodeWeights::new();
    for (u, times) in &p.nodes {
        let keys: Vec<Key> = times.iter().filter(|x| t.contains(x)).filter_map(|&x| p.key(u, x, attrs)).collect();
        tally(&mut nodes, keys, distinct);
    }
    let mut edges = EdgeWeights::new();
    for (e, times) in &p.edges {
        let keys: Vec<(Key, Key)> =
            times.iter().filter(|x| t.contains(x)).filter_map(|&x| p.edge_key(e, x, attrs)).collect();
        tally(&mut edges, keys, distinct);
    }
    (nodes, edges)
}

fn tally<K: Ord + Clone>(out: &mut BTreeMap<K, u64>, mut keys: Vec<K>, distinct: bool) {
    if distinct {
        keys.sort();
        keys.dedup();
    }
    for k in keys {
        *out.entry(k).or_insert(0) += 1;
    }
}

pub fn atoms(key: &[Value]) -> Key {
    key.iter().map(|v| v.as_atom().expect("atomic key").to_string()).collect()
}

/// Library aggregate as plain maps, dropping zero weights.
pub fn weights(agg: &AggregateGraph) -> (NodeWeights, EdgeWeights) {
    let nodes = agg.nodes().iter().filter(|(_, w)| **w > 0).map(|(k, w)| (atoms(k), *w)).collect();
    let edges = agg.edges().iter().filter(|(_, w)| **w > 0).map(|((a, b), w)| ((atoms(a), atoms(b)), *w)).collect();
    (nodes, edges)
}

/// How the points of one side of an event are combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semantics {
    Union,
    Intersection,
}

fn present(times: &BTreeSet<usize>, side: &BTreeSet<usize>, sem: Semantics) -> bool {
    match sem {
        Semantics::Union => any(times, side),
        Semantics::Intersection => all(times, side),
    }
}

/// Appearances of one entity under each key, per side.
struct Sides<K> {
    old: BTreeSet<K>,
    new: BTreeSet<K>,
    on_old: bool,
    on_new: bool,
    /// Number of appearances per key on each side and on both together.
    count_old: BTreeMap<K, u64>,
    count_new: BTreeMap<K, u64>,
    count_both: BTreeMap<K, u64>,
}

/// `meet` gives the key an entity carries on a side combined by
/// intersection.
fn sides<K: Ord + Clone>(
    times: &BTreeSet<usize>,
    keys: &BTreeMap<usize, Option<K>>,
    old: &BTreeSet<usize>,
    new: &BTreeSet<usize>,
    sem_old: Semantics,
    sem_new: Semantics,
    meet: &dyn Fn(&BTreeSet<usize>) -> Option<K>,
) -> Sides<K> {
    let side_keys = |side: &BTreeSet<usize>, sem| -> BTreeSet<K> {
        match sem {
            Semantics::Union => side.iter().filter_map(|t| keys.get(t).cloned().flatten()).collect(),
            Semantics::Intersection => meet(side).into_iter().collect(),
        }
    };
    // Under intersection semantics a side collapses to a single appearance.
    let counts = |side: &BTreeSet<usize>, sem| -> BTreeMap<K, u64> {
        let mut out = BTreeMap::new();
        match sem {
            Semantics::Union => {
                for t in side {
                    if let Some(Some(k)) = keys.get(t) {
                        *out.entry(k.clone()).or_insert(0) += 1;
                    }
                }
            }
            Semantics::Intersection => {
                if present(times, side, sem) {
                    for k in side_keys(side, sem) {
                        out.insert(k, 1);
                    }
                }
            }
        }
        out
    };
    // Two union sides may share points, which then appear once.
    let count_both = if (sem_old, sem_new) == (Semantics::Union, Semantics::Union) {
        counts(&old.union(new).copied().collect(), Semantics::Union)
    } else {
        let mut both = counts(old, sem_old);
        for (k, w) in counts(new, sem_new) {
            *both.entry(k).or_insert(0) += w;
        }
        both
    };
    Sides {
        old: side_keys(old, sem_old),
        new: side_keys(new, sem_new),
        on_old: present(times, old, sem_old),
        on_new: present(times, new, sem_new),
        count_old: counts(old, sem_old),
        count_new: counts(new, sem_new),
        count_both,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EventKind {
    Stability,
    Growth,
    Shrinkage,
}

fn event_tally<K: Ord + Clone>(out: &mut BTreeMap<K, u64>, s: &Sides<K>, event: EventKind, distinct: bool) {
    match event {
        EventKind::Stability => {
            if !(s.on_old && s.on_new) {
                return;
            }
            for k in s.old.intersection(&s.new) {
                let w = if distinct { 1 } else { s.count_both[k] };
                *out.entry(k.clone()).or_insert(0) += w;
            }
        }
        EventKind::Growth | EventKind::Shrinkage => {
            let (here, gone, keys, counts) = if event == EventKind::Growth {
                (s.on_new, s.on_old, &s.new, &s.count_new)
            } else {
                (s.on_old, s.on_new, &s.old, &s.count_old)
            };
            if !here || gone {
                return;
            }
            for k in keys {
                let w = if distinct { 1 } else { counts[k] };
                *out.entry(k.clone()).or_insert(0) += w;
            }
        }
    }
}

/// Event aggregate from `old` to `new`, each side combined with its own
/// semantics.
pub fn event_aggregate(
    p: &Plain,
    event: EventKind,
    old: &BTreeSet<usize>,
    new: &BTreeSet<usize>,
    sem: (Semantics, Semantics),
    attrs: &[&str],
    distinct: bool,
) -> (NodeWeights, EdgeWeights) {
    // A node keeps a value over a side only if it is the same at every point.
    let node_meet = |u: &str, side: &BTreeSet<usize>| -> Option<Key> {
        let vals: Vec<Option<Key>> = side.iter().map(|&t| p.key(u, t, attrs)).collect();
        match vals.first() {
            Some(Some(k)) if vals.iter().all(|v| v.as_ref() == Some(k)) => Some(k.clone()),
            _ => None,
        }
    };
    let mut nodes = NodeWeights::new();
    for (u, times) in &p.nodes {
        let keys: BTreeMap<usize, Option<Key>> = times.iter().map(|&t| (t, p.key(u, t, attrs))).collect();
        let meet = |side: &BTreeSet<usize>| if all(times, side) { node_meet(u, side) } else { None };
        event_tally(&mut nodes, &sides(times, &keys, old, new, sem.0, sem.1, &meet), event, distinct);
    }
    let mut edges = EdgeWeights::new();
    for (e, times) in &p.edges {
        let keys: BTreeMap<usize, Option<(Key, Key)>> = times.iter().map(|&t| (t, p.edge_key(e, t, attrs))).collect();
        let meet = |side: &BTreeSet<usize>| {
            if !all(times, side) {
                return None;
            }
            let (a, b) = (node_meet(&e.0, side)?, node_meet(&e.1, side)?);
            Some(if !p.directed && b < a { (b, a) } else { (a, b) })
        };
        event_tally(&mut edges, &sides(times, &keys, old, new, sem.0, sem.1, &meet), event, distinct);
    }
    (nodes, edges)
}

/// Every triple of nodes pairwise connected at `t`, as sorted ids joined by
/// `|`. Direction is ignored.
pub fn triangles_at(p: &Plain, t: usize) -> BTreeSet<String> {
    let mut adj: BTreeSet<(&str, &str)> = BTreeSet::new();
    for ((a, b), times) in &p.edges {
        if times.contains(&t) && a != b {
            adj.insert((a, b));
            adj.insert((b, a));
        }
    }
    let ids: Vec<&str> = p.nodes.keys().map(String::as_str).collect();
    let mut out = BTreeSet::new();
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            if !adj.contains(&(ids[i], ids[j])) {
                continue;
            }
            for k in j + 1..ids.len() {
                if adj.contains(&(ids[i], ids[k])) && adj.contains(&(ids[j], ids[k])) {
                    let mut m = [ids[i], ids[j], ids[k]];
                    m.sort();
                    out.insert(m.join("|"));
                }
            }
        }
    }
    out
}

/// Every contiguous interval of `0..n`.
pub fn intervals(n: usize) -> Vec<Interval> {
    (0..n).flat_map(|s| (s..n).map(move |e| Interval { start: s, end: e })).collect()
}

/// The random instance set of the operator checks: up to 8 nodes, up to 4
/// points, edge density 0.3.
pub fn small_graphs(count: usize, seed: u64) -> Vec<TemporalGraph> {
    (0..count as u64)
        .map(|i| {
            let s = seed.wrapping_mul(1_000_003).wrapping_add(i);
            let spec = RandomSpec {
                nodes: 2 + (s % 7) as usize,
                points: 1 + ((s / 7) % 4) as usize,
                directed: i % 5 == 4,
                ..RandomSpec::default()
            };
            random_graph(&spec, s)
        })
        .collect()
}

use graphtempo::exploration::{max_len, references};
use graphtempo::{key, pair_aggregate, AggMode, Event, Extremal, IntervalPair, Pattern, Reference, Target};

/// The twelve exploration cases.
pub fn cases() -> Vec<(Event, Extremal, Reference)> {
    let mut out = Vec::new();
    for event in Event::ALL {
        for extremal in [Extremal::Minimal, Extremal::Maximal] {
            for reference in [Reference::OldFixed, Reference::NewFixed] {
                out.push((event, extremal, reference));
            }
        }
    }
    out
}

/// Node and edge targets over `gender`.
pub fn targets(mode: AggMode) -> Vec<Target> {
    vec![
        Target::node(&["gender"], key(&["f"]), mode),
        Target::node(&["gender"], key(&["m"]), mode),
        Target::edge(&["gender"], key(&["f"]), key(&["f"]), mode),
        Target::edge(&["gender"], key(&["f"]), key(&["m"]), mode),
    ]
}

/// Expected direction of every key's weight when the moving side grows:
/// `true` for non-decreasing.
pub fn increasing(event: Event, extremal: Extremal, reference: Reference) -> bool {
    let union = extremal == Extremal::Minimal;
    let moves_new = reference == Reference::OldFixed;
    match event {
        Event::Stability => union,
        // More new points add grown entities; more old points remove them.
        Event::Growth => union == moves_new,
        Event::Shrinkage => union != moves_new,
    }
}

/// The random instance set of the exploration checks: up to 10 nodes and
/// 2 to 6 points.
pub fn exploration_graphs(count: usize, seed: u64) -> Vec<TemporalGraph> {
    (0..count as u64)
        .map(|i| {
            let s = seed.wrapping_mul(7_919).wrapping_add(i);
            let spec = RandomSpec {
                nodes: 3 + (s % 8) as usize,
                points: 2 + ((s / 8) % 5) as usize,
                edge_density: 0.3 + 0.1 * ((s / 40) % 3) as f64,
                directed: i % 4 == 3,
                ..RandomSpec::default()
            };
            random_graph(&spec, s)
        })
        .collect()
}

/// Every key's weight moves in the expected direction between `a` and `b`.
pub fn keywise(a: &AggregateGraph, b: &AggregateGraph, up: bool) -> bool {
    let ok = |x: u64, y: u64| if up { y >= x } else { y <= x };
    let nodes: BTreeSet<_> = a.nodes().keys().chain(b.nodes().keys()).collect();
    let edges: BTreeSet<_> = a.edges().keys().chain(b.edges().keys()).collect();
    nodes.iter().all(|k| ok(a.node_weight(k), b.node_weight(k)))
        && edges.iter().all(|(x, y)| ok(a.edge_weight(x, y), b.edge_weight(x, y)))
}

/// Checks every case and reference of `g`; returns the first violation.
pub fn monotonicity(g: &TemporalGraph, attrs: &[&str], pattern: Option<Pattern>) -> Option<String> {
    let n = g.n();
    for (event, extremal, side) in cases() {
        let up = increasing(event, extremal, side);
        for mode in [AggMode::Dist, AggMode::All] {
            for r in references(n, side) {
                let agg = |l| {
                    pair_aggregate(g, event, IntervalPair::with_len(r, l, side), side, extremal, attrs, mode, pattern).unwrap()
                };
                let mut prev = agg(1);
                for l in 2..=max_len(n, r, side) {
                    let next = agg(l);
                    if !keywise(&prev, &next, up) {
                        return Some(format!("{event} {extremal:?} {side:?} {mode} ref {r} len {l}"));
                    }
                    prev = next;
                }
            }
        }
    }
    None
}
