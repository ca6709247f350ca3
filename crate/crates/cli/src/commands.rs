use std::fs;
use std::io::Write;
use std::time::{Duration, Instant};

use graphtempo::export::{
    aggregate_to_csv, aggregate_to_dot, aggregate_to_json, evolution_to_csv, evolution_to_dot, evolution_to_json,
    exploration_heatmap_csv, exploration_to_json, temporal_graph_to_dot, temporal_graph_to_json, Format,
};
use graphtempo::materialization::CACHE_DIR_ENV;
use graphtempo::synth::synthetic_graph;
use graphtempo::{
    aggregate, aggregate_evolution, aggregate_pattern, aggregate_static_fast, brute_force_explore, build_fixture_fig1,
    build_tri_graph, evolution_graph, explore, init_threshold, load_temporal_graph, pattern_key, rollup_attributes,
    rollup_time_union_all, AggMode, AggregateCache, AggregateGraph, ExplorationQuery, GraphError, IntervalSet,
    LoadOptions, Reference, Result, SetOp, Strategy, Target, TemporalGraph,
};
use serde_json::json;

use crate::{BenchArgs, BenchCommand, CacheCommand, Command, GraphArgs, OpCommand, OutputArgs, QueryArgs, TimeArgs};

/// `old` and `new` name the extended side; the other side holds the
/// reference point.
pub fn parse_reference(s: &str) -> Result<Reference> {
    match s.to_ascii_lowercase().replace('_', "-").as_str() {
        "old" | "new-fixed" => Ok(Reference::NewFixed),
        "new" | "old-fixed" => Ok(Reference::OldFixed),
        _ => Err(GraphError::Usage(format!("unknown reference {s:?}: expected old, new, old-fixed or new-fixed"))),
    }
}

pub fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Ingest { graph, export, output } => {
            let g = load(&graph)?;
            if let Some(dir) = export {
                graphtempo::export_temporal_graph(&g, &dir)?;
            }
            let text = match output.format {
                Format::Dot => temporal_graph_to_dot(&g),
                Format::Json => pretty(&summary(&g)),
                Format::Csv => {
                    let mut s = String::from("time,nodes,edges\n");
                    for t in 0..g.n() {
                        s += &format!("{},{},{}\n", g.time().label(t), g.nodes().column_count(t), g.edges().column_count(t));
                    }
                    s
                }
            };
            emit(&output, &text)
        }
        Command::Op { op } => run_op(op),
        Command::Aggregate { graph, agg, time, op, static_fast, output } => {
            let g = load(&graph)?;
            let result = match op {
                Some(op) => {
                    let (t1, t2) = pair(&g, &time)?;
                    aggregate(&op.apply(&g, &t1, &t2)?, &operator_span(op, &t1, &t2), &agg.attrs, agg.mode)?
                }
                None => {
                    let t = interval(&g, &time)?;
                    if static_fast {
                        aggregate_static_fast(&g, &t, &agg.attrs, agg.mode)?
                    } else {
                        aggregate(&g, &t, &agg.attrs, agg.mode)?
                    }
                }
            };
            emit_aggregate(&output, &result)
        }
        Command::Tri { graph, attrs, mode, time, op, strategy, output } => {
            let g = load(&graph)?;
            if attrs.is_empty() {
                if op.is_some() {
                    return Err(GraphError::Usage("--op needs --attrs".into()));
                }
                let t = interval_or_full(&g, &time)?;
                return emit(&output, &triangles(&g, &t, output.format)?);
            }
            let result = match op {
                Some(op) => {
                    let (t1, t2) = pair(&g, &time)?;
                    let strategy = strategy.unwrap_or_else(|| Strategy::default_for(op));
                    aggregate_pattern(&g, Some((op, &t1, &t2)), &operator_span(op, &t1, &t2), &attrs, mode, strategy)?
                }
                None => aggregate_pattern(&g, None, &interval_or_full(&g, &time)?, &attrs, mode, Strategy::TriFirst)?,
            };
            emit_aggregate(&output, &result)
        }
        Command::Evolve { graph, agg, time, pattern, overlay, output } => {
            let g = load(&graph)?;
            let (told, tnew) = pair(&g, &time)?;
            if overlay {
                return emit(&output, &render_overlay(&evolution_graph(&g, &told, &tnew)?, output.format)?);
            }
            let evo = aggregate_evolution(&g, &told, &tnew, &agg.attrs, agg.mode, pattern)?;
            let text = match output.format {
                Format::Json => evolution_to_json(&evo),
                Format::Csv => evolution_to_csv(&evo)?,
                Format::Dot => evolution_to_dot(&evo),
            };
            emit(&output, &text)
        }
        Command::Explore { graph, query, k, brute_force, output } => {
            let g = load(&graph)?;
            let q = ExplorationQuery {
                event: query.event,
                extremal: query.extremal,
                reference: query.reference,
                k,
                target: target(&query)?,
            };
            let res = if brute_force { brute_force_explore(&g, &q)? } else { explore(&g, &q)? };
            let text = match output.format {
                Format::Json => exploration_to_json(&res, g.time()),
                Format::Csv => exploration_heatmap_csv(&res, g.time())?,
                Format::Dot => return Err(GraphError::Usage("exploration results export as json or csv".into())),
            };
            emit(&output, &text)
        }
        Command::InitK { graph, query, output } => {
            let g = load(&graph)?;
            let th = init_threshold(&g, query.event, query.extremal, query.reference, &target(&query)?)?;
            let text = match output.format {
                Format::Json => pretty(&serde_json::to_value(th)?),
                Format::Csv => format!("w_min,w_max,start\n{},{},{}\n", th.w_min, th.w_max, th.start),
                Format::Dot => return Err(GraphError::Usage("thresholds export as json or csv".into())),
            };
            emit(&output, &text)
        }
        Command::Cache { cmd } => run_cache(cmd),
        Command::Bench { cmd } => run_bench(cmd),
    }
}

fn run_op(op: OpCommand) -> Result<()> {
    let (graph, time, output, op) = match op {
        OpCommand::Project { graph, time, output } => {
            let g = load(&graph)?;
            let t = interval(&g, &time)?;
            let iv = match t.iter().collect::<Vec<_>>().as_slice() {
                [iv] => **iv,
                _ => return Err(GraphError::Usage("project takes a single contiguous --interval".into())),
            };
            return emit(&output, &render_graph(&graphtempo::project(&g, iv)?, output.format)?);
        }
        OpCommand::Union(b) => (b.graph, b.time, b.output, SetOp::Union),
        OpCommand::Intersection(b) => (b.graph, b.time, b.output, SetOp::Intersection),
        OpCommand::Difference(b) => (b.graph, b.time, b.output, SetOp::Difference),
    };
    let g = load(&graph)?;
    let (t1, t2) = pair(&g, &time)?;
    emit(&output, &render_graph(&op.apply(&g, &t1, &t2)?, output.format)?)
}

fn cache_dir(dir: Option<std::path::PathBuf>) -> Option<std::path::PathBuf> {
    dir.or_else(|| std::env::var_os(CACHE_DIR_ENV).filter(|d| !d.is_empty()).map(Into::into))
}

fn run_cache(cmd: CacheCommand) -> Result<()> {
    match cmd {
        CacheCommand::Build { graph, attrs, dir } => {
            let dir = cache_dir(dir)
                .ok_or_else(|| GraphError::Usage(format!("cache build needs --dir or {CACHE_DIR_ENV}")))?;
            let g = load(&graph)?;
            let cache = AggregateCache::with_dir(&dir);
            cache.precompute(&g, &attrs)?;
            let doc = json!({"dir": dir, "attrs": attrs, "points": g.n(), "entries": cache.len()});
            println!("{}", pretty(&doc));
            Ok(())
        }
        CacheCommand::Rollup { graph, attrs, subset, time, dir, output } => {
            let g = load(&graph)?;
            let cache = cache_dir(dir).map_or_else(AggregateCache::new, AggregateCache::with_dir);
            let (t1, t2) = pair(&g, &time)?;
            let full = cache.union_all_or_compute(&g, &t1, &t2, &attrs)?;
            let result = if subset.is_empty() { full } else { rollup_attributes(&full, &subset)? };
            eprintln!("cache hits {} misses {}", cache.hits(), cache.misses());
            emit_aggregate(&output, &result)
        }
    }
}

fn median(runs: usize, mut f: impl FnMut() -> Result<()>) -> Result<Duration> {
    let mut times = Vec::with_capacity(runs);
    for _ in 0..runs.max(1) {
        let start = Instant::now();
        f()?;
        times.push(start.elapsed());
    }
    times.sort();
    Ok(times[times.len() / 2])
}

fn run_bench(cmd: BenchCommand) -> Result<()> {
    let (args, rollup) = match cmd {
        BenchCommand::Rollup(a) => (a, true),
        BenchCommand::Pattern(a) => (a, false),
    };
    let BenchArgs { points, edges, nodes, runs, seed } = args;
    if points < 2 {
        return Err(GraphError::Usage("bench needs at least two points".into()));
    }
    let g = synthetic_graph(nodes, edges, points, seed);
    let mut out = String::from("method,nodes,edges,points,runs,median_ms\n");
    let mut row = |name: &str, d: Duration| {
        out += &format!("{name},{nodes},{edges},{points},{runs},{:.4}\n", d.as_secs_f64() * 1e3);
    };
    if rollup {
        let attrs = [graphtempo::synth::STATIC_ATTR, graphtempo::synth::VARYING_ATTR];
        let half = points / 2;
        let t1 = IntervalSet::from_points(0..half);
        let t2 = IntervalSet::from_points(half..points);
        let all = t1.union(&t2);
        let cache = graphtempo::precompute_timepoint_aggregates(&g, &attrs)?;
        row("direct", median(runs, || aggregate(&graphtempo::union(&g, &t1, &t2)?, &all, &attrs, AggMode::All).map(drop))?);
        row("rollup", median(runs, || rollup_time_union_all(&cache, &t1, &t2, &attrs, AggMode::All).map(drop))?);
    } else {
        let attrs = [graphtempo::synth::STATIC_ATTR];
        let (t1, t2) = (IntervalSet::point(0), IntervalSet::point(1));
        let all = t1.union(&t2);
        let op = Some((SetOp::Intersection, &t1, &t2));
        for (name, s) in [("tri_first", Strategy::TriFirst), ("op_first", Strategy::OpFirst)] {
            row(name, median(runs, || aggregate_pattern(&g, op, &all, &attrs, AggMode::Dist, s).map(drop))?);
        }
    }
    print!("{out}");
    Ok(())
}

fn load(args: &GraphArgs) -> Result<TemporalGraph> {
    if args.fixture {
        return Ok(build_fixture_fig1());
    }
    let edges = args.edges.clone().ok_or_else(|| GraphError::Usage("--edges or --fixture is required".into()))?;
    let varying = args
        .varying
        .iter()
        .map(|v| {
            v.split_once('=')
                .map(|(name, path)| (name.to_string(), path.into()))
                .ok_or_else(|| GraphError::Usage(format!("--varying expects NAME=PATH, got {v:?}")))
        })
        .collect::<Result<_>>()?;
    load_temporal_graph(&LoadOptions {
        edges,
        static_file: args.static_file.clone(),
        varying,
        presence: args.presence.clone(),
        directed: args.directed,
    })
}

fn interval(g: &TemporalGraph, time: &TimeArgs) -> Result<IntervalSet> {
    let spec = time.interval.as_deref().ok_or_else(|| GraphError::Usage("--interval is required".into()))?;
    g.time().parse_set(spec)
}

fn interval_or_full(g: &TemporalGraph, time: &TimeArgs) -> Result<IntervalSet> {
    match &time.interval {
        Some(spec) => g.time().parse_set(spec),
        None => Ok(IntervalSet::from(g.time().full())),
    }
}

fn pair(g: &TemporalGraph, time: &TimeArgs) -> Result<(IntervalSet, IntervalSet)> {
    let get = |v: &Option<String>, name: &str| {
        v.as_deref().ok_or_else(|| GraphError::Usage(format!("--{name} is required"))).and_then(|s| g.time().parse_set(s))
    };
    Ok((get(&time.t1, "t1")?, get(&time.t2, "t2")?))
}

/// Points an operator result is aggregated over.
fn operator_span(op: SetOp, t1: &IntervalSet, t2: &IntervalSet) -> IntervalSet {
    match op {
        SetOp::Difference => t1.clone(),
        SetOp::Union | SetOp::Intersection => t1.union(t2),
    }
}

fn values(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).collect()
}

fn arity(got: usize, want: usize, what: &str) -> Result<()> {
    if got == want {
        Ok(())
    } else {
        Err(GraphError::Usage(format!("{what} has {got} values, expected {want}")))
    }
}

/// Parses `--target-*` against the attribute list. Nodes are `v1,v2,..`;
/// edges are the two endpoint keys joined by `;` or one flat list split in
/// half; patterns are three members joined by `|` or `;`, or three
/// characters when there is a single attribute (`ffm`).
fn target(q: &QueryArgs) -> Result<Target> {
    let n = q.attrs.len();
    let attrs: Vec<&str> = q.attrs.iter().map(String::as_str).collect();
    if let Some(s) = &q.target_node {
        let v = values(s);
        arity(v.len(), n, "--target-node")?;
        return Ok(Target::node(&attrs, graphtempo::key(&v), q.mode));
    }
    if let Some(s) = &q.target_edge {
        let (a, b) = match s.split_once(';') {
            Some((a, b)) => (values(a), values(b)),
            None => {
                let v = values(s);
                arity(v.len(), 2 * n, "--target-edge")?;
                (v[..n].to_vec(), v[n..].to_vec())
            }
        };
        arity(a.len(), n, "--target-edge source")?;
        arity(b.len(), n, "--target-edge target")?;
        return Ok(Target::edge(&attrs, graphtempo::key(&a), graphtempo::key(&b), q.mode));
    }
    if let Some(s) = &q.target_pattern {
        let owned: Vec<String>;
        let members: Vec<Vec<&str>> = if s.contains(['|', ';']) {
            s.split(['|', ';']).map(values).collect()
        } else if n == 1 && s.chars().count() == 3 {
            owned = s.chars().map(String::from).collect();
            owned.iter().map(|c| vec![c.as_str()]).collect()
        } else {
            return Err(GraphError::Usage(format!("cannot split pattern {s:?} into three members")));
        };
        arity(members.len(), 3, "--target-pattern")?;
        for m in &members {
            arity(m.len(), n, "--target-pattern member")?;
        }
        let refs: Vec<&[&str]> = members.iter().map(Vec::as_slice).collect();
        return Ok(Target::pattern(&attrs, pattern_key(&refs), q.mode));
    }
    Err(GraphError::Usage("one of --target-node, --target-edge or --target-pattern is required".into()))
}

fn summary(g: &TemporalGraph) -> serde_json::Value {
    let attrs: Vec<_> = g
        .attrs()
        .iter()
        .map(|a| json!({"name": a.name(), "kind": if a.is_static() { "static" } else { "varying" }}))
        .collect();
    json!({
        "directed": g.is_directed(),
        "time": g.time().labels(),
        "nodes": g.node_count(),
        "edges": g.edge_count(),
        "attributes": attrs,
    })
}

fn render_graph(g: &TemporalGraph, format: Format) -> Result<String> {
    match format {
        Format::Dot => Ok(temporal_graph_to_dot(g)),
        Format::Json => Ok(temporal_graph_to_json(g)),
        Format::Csv => {
            let mut s = String::from("source,target,time\n");
            for e in 0..g.edge_count() {
                let (u, v) = g.edge_ids(e);
                for t in g.edges().times(e) {
                    s += &format!("{u},{v},{}\n", g.time().label(t));
                }
            }
            Ok(s)
        }
    }
}

fn triangles(g: &TemporalGraph, t: &IntervalSet, format: Format) -> Result<String> {
    let tri = build_tri_graph(g, t)?;
    if format == Format::Dot {
        return Ok(temporal_graph_to_dot(&tri));
    }
    let at = |p: usize| -> Vec<&str> { (0..tri.node_count()).filter(|&r| tri.nodes().get(r, p)).map(|r| tri.node_id(r)).collect() };
    if format == Format::Csv {
        let mut s = String::from("time,triangle\n");
        for p in t.points() {
            for id in at(p) {
                s += &format!("{},{id}\n", g.time().label(p));
            }
        }
        return Ok(s);
    }
    let doc: serde_json::Map<String, serde_json::Value> =
        t.points().map(|p| (g.time().label(p).to_string(), json!(at(p)))).collect();
    Ok(pretty(&serde_json::Value::Object(doc)))
}

fn render_overlay(evo: &graphtempo::EvolutionGraph, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => {
            let nodes: Vec<_> = evo.node_labels.iter().map(|(id, l)| json!({"id": id, "labels": l.to_string()})).collect();
            let edges: Vec<_> = evo
                .edge_labels
                .iter()
                .map(|((a, b), l)| json!({"source": a, "target": b, "labels": l.to_string()}))
                .collect();
            pretty(&json!({"nodes": nodes, "edges": edges}))
        }
        Format::Csv => {
            let mut s = String::from("element,id,target,labels\n");
            for (id, l) in &evo.node_labels {
                s += &format!("node,{id},,{l}\n");
            }
            for ((a, b), l) in &evo.edge_labels {
                s += &format!("edge,{a},{b},{l}\n");
            }
            s
        }
        Format::Dot => {
            let (kw, arrow) = if evo.stable.is_directed() { ("digraph", "->") } else { ("graph", "--") };
            let mut s = format!("{kw} evolution {{\n");
            for (id, l) in &evo.node_labels {
                s += &format!("  \"{id}\" [label=\"{id} {l}\"];\n");
            }
            for ((a, b), l) in &evo.edge_labels {
                s += &format!("  \"{a}\" {arrow} \"{b}\" [label=\"{l}\"];\n");
            }
            s.push_str("}\n");
            s
        }
    })
}

fn emit_aggregate(output: &OutputArgs, agg: &AggregateGraph) -> Result<()> {
    let text = match output.format {
        Format::Json => aggregate_to_json(agg),
        Format::Csv => aggregate_to_csv(agg)?,
        Format::Dot => aggregate_to_dot(agg),
    };
    emit(output, &text)
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn emit(output: &OutputArgs, text: &str) -> Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &output.output {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
