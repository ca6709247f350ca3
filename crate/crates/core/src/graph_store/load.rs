//! CSV ingestion and the matching export.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use super::{AttrKind, GraphBuilder, TemporalGraph, TimeDomain};
use crate::error::{GraphError, Result};
use crate::value::{Value, MISSING_LITERAL};

/// Input files for [`load_temporal_graph`].
#[derive(Clone, Debug, Default)]
pub struct LoadOptions {
    pub edges: PathBuf,
    pub static_file: Option<PathBuf>,
    pub varying: Vec<(String, PathBuf)>,
    pub presence: Option<PathBuf>,
    pub directed: bool,
}

struct Table {
    path: PathBuf,
    header: Vec<String>,
    rows: Vec<(u64, Vec<String>)>,
}

fn read_table(path: &Path) -> Result<Table> {
    let mut rdr = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => GraphError::Io(io),
            other => GraphError::parse(path, 0, format!("{other:?}")),
        })?;
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| GraphError::parse(path, 1, e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if header.is_empty() || header.iter().all(String::is_empty) {
        return Err(GraphError::parse(path, 1, "missing header"));
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            GraphError::parse(path, line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != header.len() {
            return Err(GraphError::parse(
                path,
                line,
                format!("expected {} fields, found {}", header.len(), rec.len()),
            ));
        }
        if rec.iter().any(str::is_empty) {
            return Err(GraphError::parse(path, line, "empty field"));
        }
        rows.push((line, rec.iter().map(str::to_string).collect()));
    }
    Ok(Table { path: path.to_path_buf(), header, rows })
}

fn expect_header(t: &Table, expected: &[&str]) -> Result<()> {
    if t.header.len() != expected.len() || t.header.iter().zip(expected).any(|(a, b)| a != b) {
        return Err(GraphError::parse(
            &t.path,
            1,
            format!("expected header {}, found {}", expected.join(","), t.header.join(",")),
        ));
    }
    Ok(())
}

/// Orders labels that come without a header: numerically when every label
/// is an integer, otherwise lexicographically.
fn order_labels(labels: HashSet<String>) -> Vec<String> {
    let mut out: Vec<String> = labels.into_iter().collect();
    if out.iter().all(|l| l.parse::<i64>().is_ok()) {
        out.sort_by_key(|l| l.parse::<i64>().unwrap());
    } else {
        out.sort();
    }
    out
}

fn time_header(t: &Table) -> Result<Vec<String>> {
    if t.header[0] != "id" {
        return Err(GraphError::parse(&t.path, 1, "first column must be id"));
    }
    if t.header.len() < 2 {
        return Err(GraphError::parse(&t.path, 1, "no time columns"));
    }
    Ok(t.header[1..].to_vec())
}

pub fn load_temporal_graph(opts: &LoadOptions) -> Result<TemporalGraph> {
    let edges = read_table(&opts.edges)?;
    expect_header(&edges, &["source", "target", "time"])?;
    let statics = opts.static_file.as_deref().map(read_table).transpose()?;
    let presence = opts.presence.as_deref().map(read_table).transpose()?;
    let varying = opts
        .varying
        .iter()
        .map(|(name, p)| Ok((name.clone(), read_table(p)?)))
        .collect::<Result<Vec<_>>>()?;

    // Header order wins; the edge file alone gives no order.
    let mut header_order: Option<(PathBuf, Vec<String>)> = None;
    for t in presence.iter().chain(varying.iter().map(|(_, t)| t)) {
        let labels = time_header(t)?;
        match &header_order {
            None => header_order = Some((t.path.clone(), labels)),
            Some((first, known)) if *known != labels => {
                return Err(GraphError::Consistency(format!(
                    "time labels of {} differ from {}",
                    t.path.display(),
                    first.display()
                )))
            }
            _ => {}
        }
    }
    let labels = match header_order {
        Some((_, l)) => l,
        None => order_labels(edges.rows.iter().map(|(_, r)| r[2].clone()).collect()),
    };
    if labels.is_empty() {
        return Err(GraphError::Consistency(format!(
            "{} has no rows and no header gives time labels",
            opts.edges.display()
        )));
    }
    let time = TimeDomain::new(labels)?;
    let lookup_t = |t: &Table, line: u64, label: &str| {
        time.index_of(label)
            .ok_or_else(|| GraphError::parse(&t.path, line, format!("unknown time label {label:?}")))
    };

    let mut b = GraphBuilder::new(time.clone(), opts.directed);
    if let Some(p) = &presence {
        for (line, row) in &p.rows {
            b.node(&row[0]);
            for (t, cell) in row[1..].iter().enumerate() {
                match cell.as_str() {
                    "1" => b.set_node_present(&row[0], t),
                    "0" => {}
                    other => return Err(GraphError::parse(&p.path, *line, format!("presence cell {other:?} is not 0/1"))),
                }
            }
        }
    }
    let mut known: Option<HashSet<String>> = None;
    if let Some(s) = &statics {
        if s.header[0] != "id" {
            return Err(GraphError::parse(&s.path, 1, "first column must be id"));
        }
        let mut ids = HashSet::new();
        for name in &s.header[1..] {
            b.declare_attr(name, AttrKind::Static)?;
        }
        for (line, row) in &s.rows {
            if !ids.insert(row[0].clone()) {
                return Err(GraphError::parse(&s.path, *line, format!("duplicate node {:?}", row[0])));
            }
            for (name, cell) in s.header[1..].iter().zip(&row[1..]) {
                let v = (cell != MISSING_LITERAL).then(|| Value::atom(cell));
                b.set_static(name, &row[0], v)?;
            }
        }
        known = Some(ids);
    }
    for (line, row) in &edges.rows {
        if let Some(ids) = &known {
            for id in [&row[0], &row[1]] {
                if !ids.contains(id) {
                    return Err(GraphError::Consistency(format!(
                        "{} line {line}: edge references node {id:?} missing from the static file",
                        edges.path.display()
                    )));
                }
            }
        }
        let t = lookup_t(&edges, *line, &row[2])?;
        b.edge(&row[0], &row[1], t);
    }
    for (name, t) in &varying {
        b.declare_attr(name, AttrKind::Varying)?;
        let mut seen = HashSet::new();
        for (line, row) in &t.rows {
            if !seen.insert(row[0].clone()) {
                return Err(GraphError::parse(&t.path, *line, format!("duplicate node {:?}", row[0])));
            }
            for (ti, cell) in row[1..].iter().enumerate() {
                if cell != MISSING_LITERAL {
                    if !b.has_node(&row[0]) {
                        return Err(GraphError::Consistency(format!(
                            "{} line {line}: value for unknown node {:?}",
                            t.path.display(),
                            row[0]
                        )));
                    }
                    b.set_varying(name, &row[0], ti, Some(Value::atom(cell)))?;
                }
            }
        }
    }
    b.build(presence.is_none())
}

fn cell(v: Option<&Value>) -> String {
    v.map_or_else(|| MISSING_LITERAL.to_string(), Value::to_string)
}

/// Writes `g` into `dir` in the ingestion format and returns the options
/// that reload it.
pub fn export_temporal_graph(g: &TemporalGraph, dir: &Path) -> Result<LoadOptions> {
    fs::create_dir_all(dir)?;
    let n = g.n();
    let labels = g.time().labels();
    let mut opts = LoadOptions { edges: dir.join("edges.csv"), directed: g.is_directed(), ..Default::default() };

    let mut w = csv::Writer::from_path(&opts.edges)?;
    w.write_record(["source", "target", "time"])?;
    for e in 0..g.edge_count() {
        let (u, v) = g.edge_ids(e);
        for t in g.edges().times(e) {
            w.write_record([u, v, labels[t].as_str()])?;
        }
    }
    w.flush()?;

    let presence = dir.join("presence.csv");
    let mut w = csv::Writer::from_path(&presence)?;
    w.write_record(std::iter::once("id").chain(labels.iter().map(String::as_str)))?;
    for u in 0..g.node_count() {
        let mut rec = vec![g.node_id(u).to_string()];
        rec.extend((0..n).map(|t| if g.nodes().get(u, t) { "1" } else { "0" }.to_string()));
        w.write_record(&rec)?;
    }
    w.flush()?;
    opts.presence = Some(presence);

    let statics: Vec<_> = g.attrs().iter().filter(|a| a.is_static()).collect();
    if !statics.is_empty() {
        let path = dir.join("static.csv");
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(std::iter::once("id").chain(statics.iter().map(|a| a.name())))?;
        for u in 0..g.node_count() {
            let mut rec = vec![g.node_id(u).to_string()];
            rec.extend(statics.iter().map(|a| cell(a.dict.get(a.code(u, 0, n)))));
            w.write_record(&rec)?;
        }
        w.flush()?;
        opts.static_file = Some(path);
    }

    let mut used = HashMap::new();
    for a in g.attrs().iter().filter(|a| !a.is_static()) {
        let base: String = a
            .name()
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '-' { c } else { '_' })
            .collect();
        let k = used.entry(base.clone()).or_insert(0usize);
        let file = if *k == 0 { format!("varying_{base}.csv") } else { format!("varying_{base}_{k}.csv") };
        *k += 1;
        let path = dir.join(file);
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(std::iter::once("id").chain(labels.iter().map(String::as_str)))?;
        for u in 0..g.node_count() {
            let mut rec = vec![g.node_id(u).to_string()];
            rec.extend((0..n).map(|t| cell(a.dict.get(a.code(u, t, n)))));
            w.write_record(&rec)?;
        }
        w.flush()?;
        opts.varying.push((a.name().to_string(), path));
    }
    Ok(opts)
}
