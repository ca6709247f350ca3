//! COUNT aggregation of nodes and edges by attribute tuples.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{GraphError, Result};
use crate::graph_store::{IntervalSet, TemporalGraph, TimeMask, MISSING};
use crate::value::{Key, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum AggMode {
    /// Each entity counted once per distinct key.
    Dist,
    /// Every (entity, time point) appearance counted.
    All,
}

impl fmt::Display for AggMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AggMode::Dist => "DIST",
            AggMode::All => "ALL",
        })
    }
}

impl std::str::FromStr for AggMode {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dist" | "distinct" => Ok(AggMode::Dist),
            "all" => Ok(AggMode::All),
            _ => Err(GraphError::Usage(format!("unknown aggregation mode {s:?}"))),
        }
    }
}

/// Weighted graph over attribute keys. Zero weights are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AggregateGraph {
    pub(crate) attrs: Vec<String>,
    pub(crate) mode: AggMode,
    pub(crate) directed: bool,
    pub(crate) nodes: BTreeMap<Key, u64>,
    pub(crate) edges: BTreeMap<(Key, Key), u64>,
}

impl AggregateGraph {
    pub fn new(attrs: Vec<String>, mode: AggMode, directed: bool) -> Self {
        AggregateGraph { attrs, mode, directed, nodes: BTreeMap::new(), edges: BTreeMap::new() }
    }

    pub fn attrs(&self) -> &[String] {
        &self.attrs
    }

    pub fn mode(&self) -> AggMode {
        self.mode
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn nodes(&self) -> &BTreeMap<Key, u64> {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeMap<(Key, Key), u64> {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty() && self.edges.is_empty()
    }

    pub fn node_weight(&self, key: &[Value]) -> u64 {
        self.nodes.get(key).copied().unwrap_or(0)
    }

    pub fn edge_weight(&self, a: &[Value], b: &[Value]) -> u64 {
        let pair = self.edge_key(a.to_vec(), b.to_vec());
        self.edges.get(&pair).copied().unwrap_or(0)
    }

    pub(crate) fn edge_key(&self, a: Key, b: Key) -> (Key, Key) {
        if !self.directed && b < a {
            (b, a)
        } else {
            (a, b)
        }
    }

    pub fn add_node(&mut self, key: Key, w: u64) {
        if w > 0 {
            *self.nodes.entry(key).or_insert(0) += w;
        }
    }

    pub fn add_edge(&mut self, a: Key, b: Key, w: u64) {
        if w > 0 {
            let pair = self.edge_key(a, b);
            *self.edges.entry(pair).or_insert(0) += w;
        }
    }
}

/// Resolves attribute names to catalog positions.
pub(crate) fn resolve<S: AsRef<str>>(g: &TemporalGraph, attrs: &[S]) -> Result<Vec<usize>> {
    if attrs.is_empty() {
        return Err(GraphError::Usage("at least one aggregation attribute is required".into()));
    }
    attrs
        .iter()
        .map(|a| {
            g.attrs()
                .position(a.as_ref())
                .ok_or_else(|| GraphError::Lookup(format!("unknown attribute {:?}", a.as_ref())))
        })
        .collect()
}

fn names<S: AsRef<str>>(attrs: &[S]) -> Vec<String> {
    attrs.iter().map(|a| a.as_ref().to_string()).collect()
}

fn checked_mask(g: &TemporalGraph, t: &IntervalSet) -> Result<TimeMask> {
    if t.is_empty() {
        return Err(GraphError::Interval("aggregation interval is empty".into()));
    }
    g.time().check_set(t)?;
    Ok(t.mask(g.n()))
}

/// Node and edge weights of `g` grouped by `attrs` over the points of `t`.
pub fn aggregate<S: AsRef<str>>(g: &TemporalGraph, t: &IntervalSet, attrs: &[S], mode: AggMode) -> Result<AggregateGraph> {
    let cols = resolve(g, attrs)?;
    let mask = checked_mask(g, t)?;
    Ok(aggregate_core(g, &mask, &cols, names(attrs), mode, Scope::default()))
}

/// Same contract as [`aggregate`] for lists of static attributes, without
/// per time point grouping.
pub fn aggregate_static_fast<S: AsRef<str>>(
    g: &TemporalGraph,
    t: &IntervalSet,
    attrs: &[S],
    mode: AggMode,
) -> Result<AggregateGraph> {
    let cols = resolve(g, attrs)?;
    if let Some(&c) = cols.iter().find(|&&c| !g.attrs().attrs[c].is_static()) {
        return Err(GraphError::Usage(format!(
            "attribute {:?} is time-varying; the static fast path needs static attributes",
            g.attrs().attrs[c].name()
        )));
    }
    let mask = checked_mask(g, t)?;
    let mut interner = Interner::default();
    let node_key: Vec<u32> = (0..g.node_count())
        .map(|u| {
            let codes: Vec<u32> = cols.iter().map(|&c| g.attrs().attrs[c].codes[u]).collect();
            if codes.contains(&MISSING) {
                MISSING
            } else {
                interner.raw(codes)
            }
        })
        .collect();
    let weight = |row_any: bool, count: u64| match mode {
        AggMode::Dist => u64::from(row_any),
        AggMode::All => count,
    };
    let mut node_w = vec![0u64; interner.len()];
    for u in 0..g.node_count() {
        if node_key[u] != MISSING {
            let c = g.nodes().count_in(u, &mask);
            node_w[node_key[u] as usize] += weight(c > 0, c);
        }
    }
    let mut edge_w: HashMap<(u32, u32), u64> = HashMap::new();
    for e in 0..g.edge_count() {
        let (u, v) = g.edge_endpoints(e);
        let (ku, kv) = (node_key[u], node_key[v]);
        if ku == MISSING || kv == MISSING {
            continue;
        }
        let c = g.edges().count_in(e, &mask);
        if c > 0 {
            let pair = if g.is_directed() { (ku, kv) } else { (ku.min(kv), ku.max(kv)) };
            *edge_w.entry(pair).or_insert(0) += weight(true, c);
        }
    }
    let keys = interner.finish(g, &cols, None);
    Ok(assemble(names(attrs), mode, g.is_directed(), &keys, &node_w, edge_w))
}

/// Rewrites a raw key before counting.
pub(crate) type KeyMap<'a> = &'a dyn Fn(Vec<Value>) -> Key;

/// Optional restrictions applied by event aggregation and pattern keys.
#[derive(Clone, Copy, Default)]
pub(crate) struct Scope<'a> {
    /// Nodes allowed to contribute node weights.
    pub node_filter: Option<&'a [bool]>,
    /// Edges allowed to contribute edge weights.
    pub edge_filter: Option<&'a [bool]>,
    /// An entity counts under a key only if it carries that key at some
    /// point of both masks.
    pub persist: Option<(&'a TimeMask, &'a TimeMask)>,
    /// Rewrites the per attribute values of an appearance into its key.
    pub key_map: Option<KeyMap<'a>>,
}

#[derive(Default)]
struct Interner {
    raw: HashMap<Vec<u32>, u32>,
    order: Vec<Vec<u32>>,
    mapped: HashMap<Key, u32>,
    mapped_order: Vec<Key>,
}

impl Interner {
    fn raw(&mut self, codes: Vec<u32>) -> u32 {
        if let Some(&id) = self.raw.get(&codes) {
            return id;
        }
        let id = self.order.len() as u32;
        self.raw.insert(codes.clone(), id);
        self.order.push(codes);
        id
    }

    fn mapped(&mut self, key: Key) -> u32 {
        if let Some(&id) = self.mapped.get(&key) {
            return id;
        }
        let id = self.mapped_order.len() as u32;
        self.mapped.insert(key.clone(), id);
        self.mapped_order.push(key);
        id
    }

    fn len(&self) -> usize {
        self.order.len().max(self.mapped_order.len())
    }

    fn finish(self, g: &TemporalGraph, cols: &[usize], mapped: Option<()>) -> Vec<Key> {
        if mapped.is_some() {
            return self.mapped_order;
        }
        self.order
            .into_iter()
            .map(|codes| {
                codes
                    .iter()
                    .zip(cols)
                    .map(|(&code, &c)| g.attrs().attrs[c].dict.get(code).expect("interned code").clone())
                    .collect()
            })
            .collect()
    }
}

fn assemble(
    attrs: Vec<String>,
    mode: AggMode,
    directed: bool,
    keys: &[Key],
    node_w: &[u64],
    edge_w: HashMap<(u32, u32), u64>,
) -> AggregateGraph {
    let mut out = AggregateGraph::new(attrs, mode, directed);
    for (k, &w) in node_w.iter().enumerate() {
        out.add_node(keys[k].clone(), w);
    }
    for ((a, b), w) in edge_w {
        out.add_edge(keys[a as usize].clone(), keys[b as usize].clone(), w);
    }
    out
}

/// Groups the appearances of `g` inside `mask`: nodes by their key at each
/// point, edges by the pair of endpoint keys at that point. Appearances with
/// a missing value are skipped.
pub(crate) fn aggregate_core(
    g: &TemporalGraph,
    mask: &TimeMask,
    cols: &[usize],
    attrs: Vec<String>,
    mode: AggMode,
    scope: Scope<'_>,
) -> AggregateGraph {
    let n = g.n();
    let pts: Vec<usize> = mask.iter().collect();
    let p = pts.len();
    let columns: Vec<_> = cols.iter().map(|&c| &g.attrs().attrs[c]).collect();

    // Unpivot: key id of every (node, point) appearance.
    let mut interner = Interner::default();
    let mut kid = vec![MISSING; g.node_count() * p];
    let mut codes = Vec::with_capacity(cols.len());
    for u in 0..g.node_count() {
        for (j, &t) in pts.iter().enumerate() {
            if !g.nodes().get(u, t) {
                continue;
            }
            codes.clear();
            codes.extend(columns.iter().map(|a| a.code(u, t, n)));
            if codes.contains(&MISSING) {
                continue;
            }
            kid[u * p + j] = match scope.key_map {
                None => interner.raw(codes.clone()),
                Some(f) => {
                    let values = codes
                        .iter()
                        .zip(&columns)
                        .map(|(&code, a)| a.dict.get(code).expect("valid code").clone())
                        .collect();
                    interner.mapped(f(values))
                }
            };
        }
    }

    let (old, new): (Vec<bool>, Vec<bool>) = match scope.persist {
        Some((o, w)) => (pts.iter().map(|&t| o.contains(t)).collect(), pts.iter().map(|&t| w.contains(t)).collect()),
        None => (Vec::new(), Vec::new()),
    };
    // Keys seen on both sides of a persistence split.
    let persistent = |seen: &[(usize, u64)]| -> Vec<u64> {
        let mut o: Vec<u64> = seen.iter().filter(|(j, _)| old[*j]).map(|&(_, k)| k).collect();
        let mut w: Vec<u64> = seen.iter().filter(|(j, _)| new[*j]).map(|&(_, k)| k).collect();
        o.sort_unstable();
        o.dedup();
        w.sort_unstable();
        o.retain(|k| w.binary_search(k).is_ok());
        o
    };

    let mut node_w = vec![0u64; interner.len()];
    let mut seen: Vec<(usize, u64)> = Vec::with_capacity(p);
    for u in 0..g.node_count() {
        if scope.node_filter.is_some_and(|f| !f[u]) {
            continue;
        }
        seen.clear();
        seen.extend((0..p).filter_map(|j| {
            let k = kid[u * p + j];
            (k != MISSING).then_some((j, k as u64))
        }));
        count(&mut seen, mode, scope.persist.is_some(), &persistent, |k| node_w[k as usize] += 1);
    }

    let mut edge_w: HashMap<(u32, u32), u64> = HashMap::new();
    for e in 0..g.edge_count() {
        if scope.edge_filter.is_some_and(|f| !f[e]) {
            continue;
        }
        let (u, v) = g.edge_endpoints(e);
        seen.clear();
        seen.extend((0..p).filter_map(|j| {
            if !g.edges().get(e, pts[j]) {
                return None;
            }
            let (ku, kv) = (kid[u * p + j], kid[v * p + j]);
            if ku == MISSING || kv == MISSING {
                return None;
            }
            let (a, b) = if g.is_directed() { (ku, kv) } else { (ku.min(kv), ku.max(kv)) };
            Some((j, (a as u64) << 32 | b as u64))
        }));
        count(&mut seen, mode, scope.persist.is_some(), &persistent, |k| {
            *edge_w.entry(((k >> 32) as u32, k as u32)).or_insert(0) += 1;
        });
    }

    let keys = interner.finish(g, cols, scope.key_map.map(|_| ()));
    assemble(attrs, mode, g.is_directed(), &keys, &node_w, edge_w)
}

type Persistent<'a> = dyn Fn(&[(usize, u64)]) -> Vec<u64> + 'a;

/// Adds one entity's appearances (`(point, key)` pairs) to the weights.
fn count(
    seen: &mut [(usize, u64)],
    mode: AggMode,
    persist: bool,
    persistent: &Persistent<'_>,
    mut add: impl FnMut(u64),
) {
    if seen.is_empty() {
        return;
    }
    let allowed = persist.then(|| persistent(seen));
    let ok = |k: u64| allowed.as_ref().is_none_or(|a| a.binary_search(&k).is_ok());
    match mode {
        AggMode::All => seen.iter().filter(|(_, k)| ok(*k)).for_each(|&(_, k)| add(k)),
        AggMode::Dist => {
            let mut keys: Vec<u64> = seen.iter().map(|&(_, k)| k).filter(|&k| ok(k)).collect();
            keys.sort_unstable();
            keys.dedup();
            keys.into_iter().for_each(add);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_store::{build_fixture_fig1, Interval};
    use crate::temporal_ops::union;
    use crate::value::key;

    fn iv(a: usize, b: usize) -> IntervalSet {
        IntervalSet::from(Interval::new(a, b).unwrap())
    }

    #[test]
    fn gender_at_t0() {
        let g = build_fixture_fig1();
        let a = aggregate(&g, &iv(0, 0), &["gender"], AggMode::Dist).unwrap();
        assert_eq!(a.node_weight(&key(&["m"])), 1);
        assert_eq!(a.node_weight(&key(&["f"])), 3);
        assert_eq!(a.edge_weight(&key(&["m"]), &key(&["f"])), 3);
        assert_eq!(a.edge_weight(&key(&["f"]), &key(&["m"])), 3);
        assert_eq!(a.edge_weight(&key(&["f"]), &key(&["f"])), 2);
        assert_eq!(a.edges().len(), 2);
    }

    #[test]
    fn union_gender_publications() {
        let g = build_fixture_fig1();
        let u = union(&g, &iv(0, 0), &iv(1, 1)).unwrap();
        let d = aggregate(&u, &iv(0, 2), &["gender", "publications"], AggMode::Dist).unwrap();
        assert_eq!(d.node_weight(&key(&["f", "1"])), 3);
        let a = aggregate(&u, &iv(0, 2), &["gender", "publications"], AggMode::All).unwrap();
        assert_eq!(a.node_weight(&key(&["f", "1"])), 4);
    }

    #[test]
    fn static_fast_examples() {
        let g = build_fixture_fig1();
        let a = aggregate_static_fast(&g, &iv(0, 1), &["gender"], AggMode::All).unwrap();
        assert_eq!(a.node_weight(&key(&["m"])), 2);
        assert_eq!(a.node_weight(&key(&["f"])), 6);
        let d = aggregate_static_fast(&g, &iv(1, 2), &["gender"], AggMode::Dist).unwrap();
        assert_eq!(d.node_weight(&key(&["m"])), 1);
        assert_eq!(d.node_weight(&key(&["f"])), 3);
        for mode in [AggMode::Dist, AggMode::All] {
            assert_eq!(
                aggregate_static_fast(&g, &iv(0, 0), &["gender"], mode).unwrap(),
                aggregate(&g, &iv(0, 0), &["gender"], mode).unwrap()
            );
        }
        assert!(matches!(
            aggregate_static_fast(&g, &iv(0, 0), &["publications"], AggMode::All),
            Err(GraphError::Usage(_))
        ));
    }

    #[test]
    fn errors() {
        let g = build_fixture_fig1();
        assert!(matches!(aggregate(&g, &iv(0, 0), &["age"], AggMode::All), Err(GraphError::Lookup(_))));
        assert!(matches!(
            aggregate(&g, &IntervalSet::empty(), &["gender"], AggMode::All),
            Err(GraphError::Interval(_))
        ));
    }

    #[test]
    fn singleton() {
        let mut b = crate::graph_store::GraphBuilder::new(crate::graph_store::TimeDomain::new(["a"]).unwrap(), false);
        b.set_node_present("x", 0);
        b.set_static("g", "x", Some("v".into())).unwrap();
        let g = b.build(false).unwrap();
        let a = aggregate(&g, &iv(0, 0), &["g"], AggMode::Dist).unwrap();
        assert_eq!(a.nodes().len(), 1);
        assert_eq!(a.node_weight(&key(&["v"])), 1);
        assert!(a.edges().is_empty());
    }
}
