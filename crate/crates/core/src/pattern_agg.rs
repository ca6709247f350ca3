//! Triangle pattern graphs and aggregation over them.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::attribute_agg::{aggregate_core, resolve, AggMode, AggregateGraph, Scope};
use crate::error::{GraphError, Result};
use crate::graph_store::{
    AttrKind, Attribute, AttributeCatalog, Dictionary, IntervalSet, PresenceMatrix, TemporalGraph, MISSING,
};
use crate::temporal_ops::SetOp;
use crate::value::{Key, Value};

/// Separator between member ids in tri-graph node ids.
pub const MEMBER_SEPARATOR: char = '|';

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Pattern {
    Triangle,
}

impl std::str::FromStr for Pattern {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "triangle" | "tri" => Ok(Pattern::Triangle),
            _ => Err(GraphError::UnsupportedPattern(format!("{s:?}: only triangles are supported"))),
        }
    }
}

/// Composition order of pattern construction and a temporal operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Build the tri-graph on the base graph, then apply the operator to it.
    TriFirst,
    /// Apply the operator to the base graph, then build the tri-graph.
    OpFirst,
}

impl Strategy {
    pub fn default_for(op: SetOp) -> Strategy {
        match op {
            SetOp::Intersection => Strategy::OpFirst,
            SetOp::Union | SetOp::Difference => Strategy::TriFirst,
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "tri_first" => Ok(Strategy::TriFirst),
            "op_first" => Ok(Strategy::OpFirst),
            _ => Err(GraphError::Usage(format!("unknown strategy {s:?}"))),
        }
    }
}

/// Member node ids of a tri-graph node.
pub fn members(tri_id: &str) -> Vec<&str> {
    tri_id.split(MEMBER_SEPARATOR).collect()
}

/// Closed triangles of the undirected view of `g` at point `t`, as sorted
/// node index triples. Each triangle is found once, from its largest vertex.
pub(crate) fn triangles_at(g: &TemporalGraph, t: usize) -> Vec<[u32; 3]> {
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); g.node_count()];
    for e in (0..g.edge_count()).filter(|&e| g.edges().get(e, t)) {
        let (u, v) = g.edge_endpoints(e);
        if u != v {
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let mut out = Vec::new();
    for v in 0..adj.len() {
        let lower: Vec<u32> = adj[v].iter().copied().take_while(|&x| (x as usize) < v).collect();
        for (a, &i) in lower.iter().enumerate() {
            for &j in &lower[a + 1..] {
                if adj[i as usize].binary_search(&j).is_ok() {
                    out.push([i, j, v as u32]);
                }
            }
        }
    }
    out
}

/// Tri-graph over the points of `t`: one node per triangle, one edge per
/// pair of triangles sharing a node, alive where both triangles are.
pub fn build_tri_graph(g: &TemporalGraph, t: &IntervalSet) -> Result<TemporalGraph> {
    g.time().check_set(t)?;
    let n = g.n();
    let mut bits: HashMap<[u32; 3], Vec<usize>> = HashMap::new();
    for p in t.points() {
        for tri in triangles_at(g, p) {
            bits.entry(tri).or_default().push(p);
        }
    }
    // Members ordered by id so the node id is canonical.
    let mut tris: Vec<(String, [u32; 3], Vec<usize>)> = bits
        .into_iter()
        .map(|(tri, pts)| {
            let mut m = tri;
            m.sort_by(|a, b| g.node_id(*a as usize).cmp(g.node_id(*b as usize)));
            let id = m.iter().map(|&x| g.node_id(x as usize)).collect::<Vec<_>>().join(&MEMBER_SEPARATOR.to_string());
            (id, m, pts)
        })
        .collect();
    tris.sort_by(|a, b| a.0.cmp(&b.0));

    let mut nodes = PresenceMatrix::new(n);
    let mut by_member: Vec<Vec<u32>> = vec![Vec::new(); g.node_count()];
    for (row, (id, m, pts)) in tris.iter().enumerate() {
        let r = nodes.ensure_row(Arc::from(id.as_str()));
        debug_assert_eq!(r, row);
        for &p in pts {
            nodes.set(r, p);
        }
        for &x in m {
            by_member[x as usize].push(row as u32);
        }
    }
    let mut pairs: HashSet<(u32, u32)> = HashSet::new();
    for list in &by_member {
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[i + 1..] {
                pairs.insert((a.min(b), a.max(b)));
            }
        }
    }
    let mut pairs: Vec<(u32, u32)> = pairs.into_iter().collect();
    pairs.sort_unstable();
    let mut edges = PresenceMatrix::new(n);
    let mut row = Vec::new();
    for (a, b) in pairs {
        row.clear();
        row.extend(nodes.row(a as usize).iter().zip(nodes.row(b as usize)).map(|(x, y)| x & y));
        if row.iter().any(|&w| w != 0) {
            edges.push_row((a, b), &row);
        }
    }

    let attrs = g
        .attrs()
        .iter()
        .map(|a| {
            let mut dict = Dictionary::default();
            let mut tuple = |codes: &mut dyn Iterator<Item = u32>| -> u32 {
                let mut items = Vec::with_capacity(3);
                for c in codes {
                    match a.dict.get(c) {
                        Some(v) => items.push(v.clone()),
                        None => return MISSING,
                    }
                }
                dict.intern(Value::Tuple(items))
            };
            let codes = match a.kind() {
                AttrKind::Static => tris
                    .iter()
                    .map(|(_, m, _)| tuple(&mut m.iter().map(|&x| a.code(x as usize, 0, n))))
                    .collect(),
                AttrKind::Varying => {
                    let mut codes = vec![MISSING; tris.len() * n];
                    for (r, (_, m, pts)) in tris.iter().enumerate() {
                        for &p in pts {
                            codes[r * n + p] = tuple(&mut m.iter().map(|&x| a.code(x as usize, p, n)));
                        }
                    }
                    codes
                }
            };
            Attribute { name: a.name().to_string(), kind: a.kind(), codes, dict: Arc::new(dict) }
        })
        .collect();

    Ok(TemporalGraph {
        time: Arc::clone(&g.time),
        nodes,
        edges,
        attrs: AttributeCatalog { attrs },
        directed: false,
    })
}

/// Turns the per attribute member tuples of a tri-graph appearance into a
/// sorted multiset of per member tuples.
pub(crate) fn member_key(values: Vec<Value>) -> Key {
    let p = match values.first() {
        Some(Value::Tuple(items)) => items.len(),
        _ => return values,
    };
    let mut out: Key = (0..p)
        .map(|i| {
            Value::Tuple(
                values
                    .iter()
                    .map(|v| match v {
                        Value::Tuple(items) => items[i].clone(),
                        atom => atom.clone(),
                    })
                    .collect(),
            )
        })
        .collect();
    out.sort();
    out
}

/// Aggregates an existing tri-graph by member attribute multisets.
pub(crate) fn aggregate_tri_graph<S: AsRef<str>>(
    tri: &TemporalGraph,
    t: &IntervalSet,
    attrs: &[S],
    mode: AggMode,
    mut scope: Scope<'_>,
) -> Result<AggregateGraph> {
    let cols = resolve(tri, attrs)?;
    scope.key_map = Some(&member_key);
    let names = attrs.iter().map(|a| a.as_ref().to_string()).collect();
    Ok(aggregate_core(tri, &t.mask(tri.n()), &cols, names, mode, scope))
}

/// Triangle aggregation over `t`, optionally composed with a binary operator.
pub fn aggregate_pattern<S: AsRef<str>>(
    g: &TemporalGraph,
    op: Option<(SetOp, &IntervalSet, &IntervalSet)>,
    t: &IntervalSet,
    attrs: &[S],
    mode: AggMode,
    strategy: Strategy,
) -> Result<AggregateGraph> {
    resolve(g, attrs)?;
    if t.is_empty() {
        return Err(GraphError::Interval("aggregation interval is empty".into()));
    }
    g.time().check_set(t)?;
    let tri = match op {
        None => build_tri_graph(g, t)?,
        Some((op, t1, t2)) => match strategy {
            Strategy::TriFirst => op.apply(&build_tri_graph(g, &t1.union(t2))?, t1, t2)?,
            Strategy::OpFirst => build_tri_graph(&op.apply(g, t1, t2)?, t)?,
        },
    };
    aggregate_tri_graph(&tri, t, attrs, mode, Scope::default())
}
