//! DOT, JSON and CSV renderings of results. Output is deterministic: keys
//! are emitted in sorted order.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::value::RawValue;
use serde_json::{json, Value as Json};

use crate::attribute_agg::{AggMode, AggregateGraph};
use crate::error::{GraphError, Result};
use crate::evolution::{AggregateEvolutionGraph, Triple};
use crate::exploration::ExplorationResult;
use crate::graph_store::{Interval, TemporalGraph, TimeDomain};
use crate::value::{render_key, Key, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(GraphError::Usage(format!("unknown output format {s:?}"))),
        }
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn html(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// `{}` for an empty aggregate.
pub fn aggregate_to_json(agg: &AggregateGraph) -> String {
    if agg.is_empty() {
        return "{}".to_string();
    }
    let nodes: Vec<Json> = agg.nodes().iter().map(|(k, w)| json!({"key": k, "weight": w})).collect();
    let edges: Vec<Json> = agg
        .edges()
        .iter()
        .map(|((a, b), w)| json!({"source": a, "target": b, "weight": w}))
        .collect();
    let doc = json!({
        "attrs": agg.attrs(),
        "mode": agg.mode(),
        "directed": agg.is_directed(),
        "nodes": nodes,
        "edges": edges,
    });
    serde_json::to_string_pretty(&doc).expect("serializable")
}

fn value_from_json(v: &Json) -> Result<Value> {
    match v {
        Json::String(s) => Ok(Value::atom(s)),
        Json::Array(items) => Ok(Value::Tuple(items.iter().map(value_from_json).collect::<Result<_>>()?)),
        other => Err(GraphError::Consistency(format!("unexpected key value {other}"))),
    }
}

fn key_from_json(v: &Json) -> Result<Key> {
    match v {
        Json::Array(items) => items.iter().map(value_from_json).collect(),
        other => Err(GraphError::Consistency(format!("unexpected key {other}"))),
    }
}

/// Inverse of [`aggregate_to_json`]. An empty document yields an empty
/// aggregate with the given defaults.
pub fn aggregate_from_json(text: &str, attrs: &[String], mode: AggMode, directed: bool) -> Result<AggregateGraph> {
    let doc: Json = serde_json::from_str(text)?;
    let obj = doc
        .as_object()
        .ok_or_else(|| GraphError::Consistency("aggregate document is not an object".into()))?;
    if obj.is_empty() {
        return Ok(AggregateGraph::new(attrs.to_vec(), mode, directed));
    }
    let field = |name: &str| obj.get(name).ok_or_else(|| GraphError::Consistency(format!("missing field {name:?}")));
    let attrs: Vec<String> = serde_json::from_value(field("attrs")?.clone())?;
    let mode: AggMode = field("mode")?.as_str().unwrap_or_default().parse()?;
    let directed = field("directed")?.as_bool().unwrap_or(false);
    let mut agg = AggregateGraph::new(attrs, mode, directed);
    let weight = |v: &Json| v.get("weight").and_then(Json::as_u64).ok_or_else(|| GraphError::Consistency("bad weight".into()));
    for n in field("nodes")?.as_array().into_iter().flatten() {
        agg.add_node(key_from_json(&n["key"])?, weight(n)?);
    }
    for e in field("edges")?.as_array().into_iter().flatten() {
        agg.add_edge(key_from_json(&e["source"])?, key_from_json(&e["target"])?, weight(e)?);
    }
    Ok(agg)
}

/// Header only for an empty aggregate.
pub fn aggregate_to_csv(agg: &AggregateGraph) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["element", "key", "target", "weight"])?;
    for (k, weight) in agg.nodes() {
        w.write_record(["node", &render_key(k), "", &weight.to_string()])?;
    }
    for ((a, b), weight) in agg.edges() {
        w.write_record(["edge", &render_key(a), &render_key(b), &weight.to_string()])?;
    }
    csv_string(w)
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| GraphError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("utf-8 input"))
}

pub fn aggregate_to_dot(agg: &AggregateGraph) -> String {
    let (kw, arrow) = if agg.is_directed() { ("digraph", "->") } else { ("graph", "--") };
    let mut out = format!("{kw} aggregate {{\n");
    for (k, w) in agg.nodes() {
        let id = render_key(k);
        let _ = writeln!(out, "  {} [label={}, weight={w}];", quote(&id), quote(&format!("{id} ({w})")));
    }
    for ((a, b), w) in agg.edges() {
        let _ = writeln!(
            out,
            "  {} {arrow} {} [label=\"{w}\", weight={w}];",
            quote(&render_key(a)),
            quote(&render_key(b))
        );
    }
    out.push_str("}\n");
    out
}

fn percent(part: u64, total: u64) -> Box<RawValue> {
    let p = if total == 0 { 0.0 } else { 100.0 * part as f64 / total as f64 };
    RawValue::from_string(format!("{p:.4}")).expect("number literal")
}

#[derive(Serialize)]
struct EvolutionRow<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    key: Option<&'a Key>,
    #[serde(skip_serializing_if = "Option::is_none")]
    source: Option<&'a Key>,
    #[serde(skip_serializing_if = "Option::is_none")]
    target: Option<&'a Key>,
    #[serde(rename = "S")]
    s: u64,
    #[serde(rename = "G")]
    g: u64,
    #[serde(rename = "R")]
    r: u64,
    total: u64,
    #[serde(rename = "percent_S")]
    percent_s: Box<RawValue>,
    #[serde(rename = "percent_G")]
    percent_g: Box<RawValue>,
    #[serde(rename = "percent_R")]
    percent_r: Box<RawValue>,
}

fn evolution_row<'a>(key: Option<&'a Key>, edge: Option<(&'a Key, &'a Key)>, t: &Triple) -> EvolutionRow<'a> {
    let total = t.total();
    EvolutionRow {
        key,
        source: edge.map(|e| e.0),
        target: edge.map(|e| e.1),
        s: t.stability,
        g: t.growth,
        r: t.shrinkage,
        total,
        percent_s: percent(t.stability, total),
        percent_g: percent(t.growth, total),
        percent_r: percent(t.shrinkage, total),
    }
}

pub fn evolution_to_json(evo: &AggregateEvolutionGraph) -> String {
    #[derive(Serialize)]
    struct Doc<'a> {
        attrs: &'a [String],
        mode: AggMode,
        nodes: Vec<EvolutionRow<'a>>,
        edges: Vec<EvolutionRow<'a>>,
    }
    let doc = Doc {
        attrs: &evo.attrs,
        mode: evo.mode,
        nodes: evo.nodes.iter().map(|(k, t)| evolution_row(Some(k), None, t)).collect(),
        edges: evo.edges.iter().map(|((a, b), t)| evolution_row(None, Some((a, b)), t)).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

pub fn evolution_to_csv(evo: &AggregateEvolutionGraph) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["element", "key", "target", "S", "G", "R", "total"])?;
    let row = |t: &Triple| [t.stability, t.growth, t.shrinkage, t.total()].map(|x| x.to_string());
    for (k, t) in &evo.nodes {
        let [s, g, r, total] = row(t);
        w.write_record(["node", &render_key(k), "", &s, &g, &r, &total])?;
    }
    for ((a, b), t) in &evo.edges {
        let [s, g, r, total] = row(t);
        w.write_record(["edge", &render_key(a), &render_key(b), &s, &g, &r, &total])?;
    }
    csv_string(w)
}

fn triple_label(t: &Triple) -> String {
    format!(
        "<FONT COLOR=\"darkgreen\">S={}</FONT> <FONT COLOR=\"blue\">G={}</FONT> <FONT COLOR=\"red\">R={}</FONT>",
        t.stability, t.growth, t.shrinkage
    )
}

pub fn evolution_to_dot(evo: &AggregateEvolutionGraph) -> String {
    let directed = evo.stability.is_directed();
    let (kw, arrow) = if directed { ("digraph", "->") } else { ("graph", "--") };
    let mut out = format!("{kw} evolution {{\n");
    for (k, t) in &evo.nodes {
        let id = render_key(k);
        let _ = writeln!(out, "  {} [label=<{}<BR/>{}>];", quote(&id), html(&id), triple_label(t));
    }
    for ((a, b), t) in &evo.edges {
        let _ = writeln!(
            out,
            "  {} {arrow} {} [label=<{}>];",
            quote(&render_key(a)),
            quote(&render_key(b)),
            triple_label(t)
        );
    }
    out.push_str("}\n");
    out
}

fn render(time: &TimeDomain, iv: Interval) -> String {
    time.render_interval(&iv)
}

pub fn exploration_to_json(res: &ExplorationResult, time: &TimeDomain) -> String {
    let side = res.query.reference;
    let q = &res.query;
    let pairs: Vec<Json> = res
        .pairs
        .iter()
        .map(|e| {
            json!({
                "reference": time.label(e.pair.reference),
                "extended": render(time, e.pair.extended),
                "old": render(time, e.pair.old(side)),
                "new": render(time, e.pair.new_side(side)),
                "weight": e.weight,
            })
        })
        .collect();
    let doc = json!({
        "query": {
            "event": q.event,
            "extremal": q.extremal,
            "reference": q.reference,
            "k": q.k,
            "target": q.target.to_string(),
            "attrs": q.target.attrs,
            "mode": q.target.mode,
            "pattern": q.target.pattern,
        },
        "evaluations": res.evaluations,
        "pairs": pairs,
    });
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// Reference × extension length grid of evaluated weights; cells never
/// evaluated are left empty.
pub fn exploration_heatmap_csv(res: &ExplorationResult, time: &TimeDomain) -> Result<String> {
    let n = time.len();
    let side = res.query.reference;
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["reference".to_string()];
    header.extend((1..n).map(|l| l.to_string()));
    w.write_record(&header)?;
    for r in crate::exploration::references(n, side) {
        let mut row = vec![time.label(r).to_string()];
        for len in 1..n {
            let cell = res
                .evaluated
                .iter()
                .rev()
                .find(|e| e.pair.reference == r && e.pair.extended.len() == len)
                .map(|e| e.weight.to_string())
                .unwrap_or_default();
            row.push(cell);
        }
        w.write_record(&row)?;
    }
    csv_string(w)
}

pub fn temporal_graph_to_dot(g: &TemporalGraph) -> String {
    let (kw, arrow) = if g.is_directed() { ("digraph", "->") } else { ("graph", "--") };
    let bits = |times: Vec<usize>| times.iter().map(|&t| g.time().label(t)).collect::<Vec<_>>().join(",");
    let mut out = format!("{kw} temporal {{\n");
    for u in 0..g.node_count() {
        let id = g.node_id(u);
        let _ = writeln!(out, "  {} [times={}];", quote(id), quote(&bits(g.nodes().times(u).collect())));
    }
    for e in 0..g.edge_count() {
        let (a, b) = g.edge_ids(e);
        let _ = writeln!(out, "  {} {arrow} {} [times={}];", quote(a), quote(b), quote(&bits(g.edges().times(e).collect())));
    }
    out.push_str("}\n");
    out
}

pub fn temporal_graph_to_json(g: &TemporalGraph) -> String {
    let n = g.n();
    let nodes: Vec<Json> = (0..g.node_count())
        .map(|u| {
            let mut attrs = serde_json::Map::new();
            for a in g.attrs().iter() {
                let v: Json = if a.is_static() {
                    json!(a.dictionary().get(a.code(u, 0, n)))
                } else {
                    Json::Array((0..n).map(|t| json!(a.dictionary().get(a.code(u, t, n)))).collect())
                };
                attrs.insert(a.name().to_string(), v);
            }
            json!({
                "id": g.node_id(u),
                "times": g.nodes().times(u).map(|t| g.time().label(t)).collect::<Vec<_>>(),
                "attrs": attrs,
            })
        })
        .collect();
    let edges: Vec<Json> = (0..g.edge_count())
        .map(|e| {
            let (a, b) = g.edge_ids(e);
            json!({"source": a, "target": b, "times": g.edges().times(e).map(|t| g.time().label(t)).collect::<Vec<_>>()})
        })
        .collect();
    let doc = json!({"time": g.time().labels(), "directed": g.is_directed(), "nodes": nodes, "edges": edges});
    serde_json::to_string_pretty(&doc).expect("serializable")
}
